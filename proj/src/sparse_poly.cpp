#include "treepack/sparse_poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace treepack {

Monomial::Monomial(std::vector<std::pair<Var, std::uint32_t>> powers) {
  std::sort(powers.begin(), powers.end());
  for (const auto& [v, e] : powers) {
    if (e == 0) continue;
    if (!powers_.empty() && powers_.back().first == v) {
      powers_.back().second += e;
    } else {
      powers_.emplace_back(v, e);
    }
  }
}

Monomial Monomial::variable(Var v, std::uint32_t e) {
  return Monomial(std::vector<std::pair<Var, std::uint32_t>>{{v, e}});
}

std::uint32_t Monomial::degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& p : powers_) d += p.second;
  return d;
}

std::uint32_t Monomial::degree_in(Var v) const noexcept {
  auto it = std::lower_bound(powers_.begin(), powers_.end(), std::pair<Var, std::uint32_t>{v, 0});
  return it != powers_.end() && it->first == v ? it->second : 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.powers_.reserve(a.powers_.size() + b.powers_.size());
  auto i = a.powers_.begin();
  auto j = b.powers_.begin();
  while (i != a.powers_.end() || j != b.powers_.end()) {
    if (j == b.powers_.end() || (i != a.powers_.end() && i->first < j->first)) {
      out.powers_.push_back(*i++);
    } else if (i == a.powers_.end() || j->first < i->first) {
      out.powers_.push_back(*j++);
    } else {
      out.powers_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const noexcept {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da > db;
  const auto pa = a.powers();
  const auto pb = b.powers();
  std::size_t i = 0;
  for (; i < pa.size() && i < pb.size(); ++i) {
    // A smaller variable id present in only one side is the larger one.
    if (pa[i].first != pb[i].first) return pa[i].first < pb[i].first;
    if (pa[i].second != pb[i].second) return pa[i].second > pb[i].second;
  }
  return false;
}

SparsePoly::SparsePoly(const mpq_class& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

SparsePoly SparsePoly::variable(Var v) { return term(1, Monomial::variable(v)); }

SparsePoly SparsePoly::term(const mpq_class& c, Monomial m) {
  SparsePoly p;
  if (c != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

mpq_class SparsePoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

std::uint32_t SparsePoly::degree() const noexcept {
  // Graded order: the first term has the largest total degree.
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

std::uint32_t SparsePoly::degree_in(Var v) const noexcept {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(v));
  return d;
}

std::vector<Var> SparsePoly::variables() const {
  std::vector<Var> vars;
  for (const auto& [m, c] : terms_) {
    for (const auto& p : m.powers()) vars.push_back(p.first);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

void SparsePoly::add_scaled(const SparsePoly& o, const mpq_class& c, const Monomial& m) {
  if (c == 0) return;
  for (const auto& [om, oc] : o.terms_) {
    auto key = m.is_constant() ? om : om * m;
    auto [it, inserted] = terms_.try_emplace(std::move(key), 0);
    it->second += c * oc;
    if (it->second == 0) terms_.erase(it);
  }
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  add_scaled(o, 1, Monomial{});
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  add_scaled(o, -1, Monomial{});
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  const SparsePoly& small = a.size() <= b.size() ? a : b;
  const SparsePoly& large = a.size() <= b.size() ? b : a;
  SparsePoly out;
  for (const auto& [m, c] : small.terms_) out.add_scaled(large, c, m);
  return out;
}

SparsePoly SparsePoly::scaled(const mpq_class& c) const {
  SparsePoly out;
  if (c == 0) return out;
  for (const auto& [m, coeff] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, coeff * c);
  return out;
}

SparsePoly SparsePoly::pow(std::uint32_t e) const {
  SparsePoly result(1);
  SparsePoly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

mpq_class SparsePoly::evaluate(const std::function<mpq_class(Var)>& value) const {
  mpq_class total = 0;
  for (const auto& [m, c] : terms_) {
    mpq_class t = c;
    for (const auto& [v, e] : m.powers()) {
      mpq_class x = value(v);
      mpz_pow_ui(x.get_num_mpz_t(), x.get_num_mpz_t(), e);
      mpz_pow_ui(x.get_den_mpz_t(), x.get_den_mpz_t(), e);
      t *= x;
      if (t == 0) break;
    }
    total += t;
  }
  return total;
}

SparsePoly SparsePoly::specialize(const std::unordered_map<Var, mpq_class>& values) const {
  SparsePoly out;
  for (const auto& [m, c] : terms_) {
    mpq_class coeff = c;
    std::vector<std::pair<Var, std::uint32_t>> kept;
    for (const auto& [v, e] : m.powers()) {
      auto it = values.find(v);
      if (it == values.end()) {
        kept.emplace_back(v, e);
        continue;
      }
      mpq_class x = it->second;
      mpz_pow_ui(x.get_num_mpz_t(), x.get_num_mpz_t(), e);
      mpz_pow_ui(x.get_den_mpz_t(), x.get_den_mpz_t(), e);
      coeff *= x;
    }
    out.add_scaled(SparsePoly(1), coeff, Monomial(std::move(kept)));
  }
  return out;
}

SparsePoly SparsePoly::permute(const std::function<Var(Var)>& rename) const {
  std::vector<Var> images;
  for (Var v : variables()) images.push_back(rename(v));
  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end()) {
    throw std::invalid_argument("variable renaming is not injective");
  }
  SparsePoly out;
  for (const auto& [m, c] : terms_) {
    std::vector<std::pair<Var, std::uint32_t>> powers;
    powers.reserve(m.powers().size());
    for (const auto& [v, e] : m.powers()) powers.emplace_back(rename(v), e);
    Monomial renamed(std::move(powers));
    out.add_scaled(SparsePoly(1), c, renamed);
  }
  return out;
}

std::string SparsePoly::to_string(const std::function<std::string(Var)>& name) const {
  if (terms_.empty()) return "0\n";
  std::ostringstream os;
  for (const auto& [m, c] : terms_) {
    os << c.get_str();
    for (const auto& [v, e] : m.powers()) {
      os << " * " << name(v);
      if (e != 1) os << '^' << e;
    }
    os << '\n';
  }
  return os.str();
}

YPoly::YPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

YPoly::YPoly(long c) {
  if (c != 0) coeffs_.emplace_back(c);
}

YPoly YPoly::y() { return YPoly({0, 1}); }

YPoly YPoly::linear(const mpz_class& a, const mpz_class& b) { return YPoly({b, a}); }

void YPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class YPoly::evaluate(const mpz_class& y) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

YPoly& YPoly::operator+=(const YPoly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

YPoly& YPoly::operator-=(const YPoly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

YPoly operator*(const YPoly& a, const YPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return YPoly(std::move(out));
}

SparsePoly YPoly::to_sparse(Var y) const {
  SparsePoly out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out += SparsePoly::term(coeffs_[i], Monomial::variable(y, static_cast<std::uint32_t>(i)));
  }
  return out;
}

std::string YPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const mpz_class& c = coeffs_[i];
    if (c == 0) continue;
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) {
      os << mag.get_str();
      if (i > 0) os << '*';
    }
    if (i >= 1) os << 'y';
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

}  // namespace treepack
