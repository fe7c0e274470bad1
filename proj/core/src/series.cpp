#include "abmod/series.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "abmod/errors.hpp"

namespace abm {

namespace {

int clamp_prec(long p) {
  return static_cast<int>(std::min<long>(p, kExactPrec));
}

}  // namespace

void TruncatedSeries::trim() {
  // Anything within shifting distance of the sentinel is still exact.
  if (prec_ >= kExactPrec / 2) prec_ = kExactPrec;
  if (static_cast<int>(c_.size()) > prec_)
    c_.resize(std::max(prec_, 0));
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

TruncatedSeries TruncatedSeries::constant(const Scalar& c, int prec) {
  TruncatedSeries s(prec);
  s.c_.assign(1, c);
  s.trim();
  return s;
}

TruncatedSeries TruncatedSeries::monomial(int exp, const Scalar& c, int prec) {
  TruncatedSeries s(prec);
  s.c_.assign(exp + 1, Scalar(0));
  s.c_[exp] = c;
  s.trim();
  return s;
}

TruncatedSeries TruncatedSeries::from_coeffs(std::vector<Scalar> coeffs,
                                             int prec) {
  TruncatedSeries s(prec);
  s.c_ = std::move(coeffs);
  s.trim();
  return s;
}

Scalar TruncatedSeries::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Scalar(0);
  return c_[i];
}

int TruncatedSeries::valuation() const {
  for (int i = 0; i < static_cast<int>(c_.size()); ++i)
    if (!c_[i].is_zero()) return i;
  return prec_;
}

bool TruncatedSeries::is_one() const {
  return c_.size() == 1 && (c_[0] - Scalar(1)).is_zero();
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

TruncatedSeries operator+(const TruncatedSeries& x, const TruncatedSeries& y) {
  TruncatedSeries r(std::min(x.prec_, y.prec_));
  r.c_.assign(std::max(x.c_.size(), y.c_.size()), Scalar(0));
  for (int i = 0; i < static_cast<int>(r.c_.size()); ++i)
    r.c_[i] = x.coeff(i) + y.coeff(i);
  r.trim();
  return r;
}

TruncatedSeries operator-(const TruncatedSeries& x, const TruncatedSeries& y) {
  return x + (-y);
}

TruncatedSeries operator*(const TruncatedSeries& x, const TruncatedSeries& y) {
  int prec = clamp_prec(std::min(static_cast<long>(x.prec_) + y.valuation(),
                                 static_cast<long>(y.prec_) + x.valuation()));
  TruncatedSeries r(prec);
  if (x.c_.empty() || y.c_.empty()) return r;
  int n = std::min<long>(prec, x.c_.size() + y.c_.size() - 1);
  r.c_.assign(std::max(n, 0), Scalar(0));
  for (int i = 0; i < static_cast<int>(x.c_.size()); ++i) {
    if (x.c_[i].is_zero()) continue;
    for (int j = 0; j < static_cast<int>(y.c_.size()) && i + j < n; ++j)
      r.c_[i + j] += x.c_[i] * y.c_[j];
  }
  r.trim();
  return r;
}

TruncatedSeries operator*(const Scalar& s, const TruncatedSeries& x) {
  TruncatedSeries r = x;
  for (auto& v : r.c_) v = s * v;
  r.trim();
  return r;
}

TruncatedSeries TruncatedSeries::shifted(int t) const {
  TruncatedSeries r(clamp_prec(static_cast<long>(prec_) + t));
  if (!c_.empty()) {
    r.c_.assign(c_.size() + t, Scalar(0));
    std::copy(c_.begin(), c_.end(), r.c_.begin() + t);
  }
  r.trim();
  return r;
}

TruncatedSeries TruncatedSeries::invert() const {
  if (coeff(0).is_zero())
    fail(errc::not_a_unit, "series has no constant term");
  TruncatedSeries r(prec_);
  int n = std::min(prec_, std::max<int>(c_.size(), 1));
  // A unit's reciprocal is determined to the same precision but needs
  // all digits up to prec_, not just the stored ones, when prec_ is
  // finite; beyond the stored coefficients the inputs are zero.
  if (!is_exact()) n = prec_;
  if (is_exact() && c_.size() == 1) {
    r.c_.assign(1, c_[0].inverse());
    return r;
  }
  if (is_exact()) {
    // An exact non-constant series has an exact reciprocal only as a
    // formal object; computing one digit per stored digit is the most
    // that is representable. Callers wanting more should truncate first.
    n = static_cast<int>(c_.size());
    r.prec_ = n;
  }
  r.c_.assign(std::max(n, 0), Scalar(0));
  Scalar inv0 = c_[0].inverse();
  r.c_[0] = inv0;
  for (int k = 1; k < n; ++k) {
    Scalar acc(0);
    for (int i = 1; i <= k; ++i) acc += coeff(i) * r.c_[k - i];
    r.c_[k] = -(inv0 * acc);
  }
  r.trim();
  return r;
}

TruncatedSeries TruncatedSeries::derivative() const {
  TruncatedSeries r(is_exact() ? kExactPrec : prec_ - 1);
  if (c_.size() > 1) {
    r.c_.assign(c_.size() - 1, Scalar(0));
    for (int i = 1; i < static_cast<int>(c_.size()); ++i)
      r.c_[i - 1] = Scalar(static_cast<long>(i)) * c_[i];
  }
  r.trim();
  return r;
}

TruncatedSeries TruncatedSeries::compose(const TruncatedSeries& inner) const {
  if (!inner.coeff(0).is_zero())
    fail(errc::invalid_theta, "substituted series must vanish at 0");
  TruncatedSeries acc;
  for (int i = static_cast<int>(c_.size()); i-- > 0;)
    acc = acc * inner + TruncatedSeries::constant(c_[i]);
  // The discarded tail of *this starts at b^prec_ and contributes from
  // order prec_ * val(inner) on.
  if (!is_exact()) {
    long cap = static_cast<long>(prec_) *
               std::max(1, std::min(inner.valuation(), inner.precision()));
    acc = acc.truncated(clamp_prec(cap));
  }
  return acc;
}

TruncatedSeries TruncatedSeries::truncated(int n) const {
  if (n >= prec_) return *this;
  TruncatedSeries r(n);
  r.c_ = c_;
  r.trim();
  return r;
}

bool equal_mod_prec(const TruncatedSeries& x, const TruncatedSeries& y) {
  int n = std::min(x.precision(), y.precision());
  for (int i = 0; i < std::min<long>(n, std::max(x.stored_size(), y.stored_size())); ++i)
    if (!(x.coeff(i) - y.coeff(i)).is_zero()) return false;
  return true;
}

std::string TruncatedSeries::str(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < static_cast<int>(c_.size()); ++i) {
    if (c_[i].is_zero()) continue;
    std::string cs = c_[i].str();
    if (!first) {
      if (!cs.empty() && cs[0] == '-') {
        os << " - ";
        cs = cs.substr(1);
      } else {
        os << " + ";
      }
    }
    first = false;
    if (i == 0) {
      os << cs;
    } else {
      if (cs == "1") {
      } else if (cs == "-1") {
        os << "-";
      } else {
        bool composite = cs.find(' ') != std::string::npos;
        os << (composite ? "(" + cs + ")" : cs) << "*";
      }
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  if (!is_exact()) os << " + O(" << var << "^" << prec_ << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s) {
  return os << s.str();
}

// ---------------------------------------------------------------------
// LaurentSeries

void LaurentSeries::normalize() {
  if (prec_ >= kExactPrec / 2) prec_ = kExactPrec;
  int drop = 0;
  while (drop < static_cast<int>(c_.size()) && c_[drop].is_zero()) ++drop;
  if (drop) {
    c_.erase(c_.begin(), c_.begin() + drop);
    base_ += drop;
  }
  if (base_ + static_cast<int>(c_.size()) > prec_)
    c_.resize(std::max(prec_ - base_, 0));
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  if (c_.empty()) base_ = 0;
}

LaurentSeries::LaurentSeries(const TruncatedSeries& s)
    : base_(0), prec_(s.precision()) {
  c_.reserve(s.stored_size());
  for (int i = 0; i < s.stored_size(); ++i) c_.push_back(s.coeff(i));
  normalize();
}

LaurentSeries::LaurentSeries(int base, std::vector<Scalar> coeffs, int prec)
    : base_(base), c_(std::move(coeffs)), prec_(prec) {
  normalize();
}

LaurentSeries LaurentSeries::monomial(int exp, const Scalar& c, int prec) {
  return LaurentSeries(exp, {c}, prec);
}

int LaurentSeries::valuation() const {
  return c_.empty() ? prec_ : base_;
}

Scalar LaurentSeries::coeff(int e) const {
  int i = e - base_;
  if (c_.empty() || i < 0 || i >= static_cast<int>(c_.size())) return Scalar(0);
  return c_[i];
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

LaurentSeries operator+(const LaurentSeries& x, const LaurentSeries& y) {
  int prec = std::min(x.prec_, y.prec_);
  if (x.c_.empty() && y.c_.empty()) return LaurentSeries(0, {}, prec);
  int lo = x.c_.empty() ? y.base_
         : y.c_.empty() ? x.base_
                        : std::min(x.base_, y.base_);
  int hi = std::max(x.base_ + static_cast<int>(x.c_.size()),
                    y.base_ + static_cast<int>(y.c_.size()));
  std::vector<Scalar> c(std::max(hi - lo, 0), Scalar(0));
  for (int e = lo; e < hi; ++e) c[e - lo] = x.coeff(e) + y.coeff(e);
  return LaurentSeries(lo, std::move(c), prec);
}

LaurentSeries operator-(const LaurentSeries& x, const LaurentSeries& y) {
  return x + (-y);
}

LaurentSeries operator*(const LaurentSeries& x, const LaurentSeries& y) {
  long prec = std::min(static_cast<long>(x.prec_) + y.valuation(),
                       static_cast<long>(y.prec_) + x.valuation());
  prec = std::min<long>(prec, kExactPrec);
  if (x.c_.empty() || y.c_.empty())
    return LaurentSeries(0, {}, static_cast<int>(prec));
  int lo = x.base_ + y.base_;
  long n = std::min<long>(prec - lo,
                          static_cast<long>(x.c_.size()) + y.c_.size() - 1);
  std::vector<Scalar> c(std::max<long>(n, 0), Scalar(0));
  for (int i = 0; i < static_cast<int>(x.c_.size()); ++i) {
    if (x.c_[i].is_zero()) continue;
    for (int j = 0; j < static_cast<int>(y.c_.size()) && i + j < n; ++j)
      c[i + j] += x.c_[i] * y.c_[j];
  }
  return LaurentSeries(lo, std::move(c), static_cast<int>(prec));
}

LaurentSeries operator*(const Scalar& s, const LaurentSeries& x) {
  LaurentSeries r = x;
  for (auto& v : r.c_) v = s * v;
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::shifted(int t) const {
  LaurentSeries r = *this;
  r.base_ += t;
  r.prec_ = clamp_prec(static_cast<long>(prec_) + t);
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::invert() const {
  if (c_.empty()) fail(errc::not_a_unit, "inverse of zero Laurent series");
  // b^base * u with u a unit: invert u as a power series, shift back.
  TruncatedSeries u = TruncatedSeries::from_coeffs(
      c_, is_exact() ? kExactPrec : prec_ - base_);
  TruncatedSeries ui = u.invert();
  return LaurentSeries(ui).shifted(-base_);
}

LaurentSeries LaurentSeries::derivative() const {
  LaurentSeries r = *this;
  for (int i = 0; i < static_cast<int>(r.c_.size()); ++i)
    r.c_[i] = Scalar(r.base_ + i) * r.c_[i];
  r.base_ -= 1;
  if (!is_exact()) r.prec_ = prec_ - 1;
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::truncated(int n) const {
  if (n >= prec_) return *this;
  LaurentSeries r = *this;
  r.prec_ = n;
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::head(int n) const {
  LaurentSeries r = *this;
  if (!c_.empty() && base_ + static_cast<int>(c_.size()) > n)
    r.c_.resize(std::max(n - base_, 0));
  r.normalize();
  return r;
}

TruncatedSeries LaurentSeries::to_truncated() const {
  if (!is_power_series())
    fail(errc::not_normal, "Laurent series has negative exponents");
  std::vector<Scalar> c(base_ + c_.size(), Scalar(0));
  std::copy(c_.begin(), c_.end(), c.begin() + base_);
  return TruncatedSeries::from_coeffs(std::move(c), prec_);
}

bool equal_mod_prec(const LaurentSeries& x, const LaurentSeries& y) {
  int n = std::min(x.precision(), y.precision());
  int lo = std::min(x.valuation(), y.valuation());
  for (int e = lo; e < n; ++e)
    if (!(x.coeff(e) - y.coeff(e)).is_zero()) return false;
  return true;
}

std::string LaurentSeries::str(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < static_cast<int>(c_.size()); ++i) {
    if (c_[i].is_zero()) continue;
    int e = base_ + i;
    std::string cs = c_[i].str();
    if (!first) {
      if (!cs.empty() && cs[0] == '-') {
        os << " - ";
        cs = cs.substr(1);
      } else {
        os << " + ";
      }
    }
    first = false;
    if (e == 0) {
      os << cs;
      continue;
    }
    if (cs == "1") {
    } else if (cs == "-1") {
      os << "-";
    } else {
      bool composite = cs.find(' ') != std::string::npos;
      os << (composite ? "(" + cs + ")" : cs) << "*";
    }
    os << var;
    if (e != 1) os << "^" << e;
  }
  if (first) os << "0";
  if (!is_exact()) os << " + O(" << var << "^" << prec_ << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentSeries& s) {
  return os << s.str();
}

}  // namespace abm
