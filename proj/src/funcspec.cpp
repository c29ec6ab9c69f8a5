#include "sheetlab/funcspec.hpp"

#include "sheetlab/error.hpp"

#include <algorithm>
#include <cctype>

namespace sheetlab {

namespace {

constexpr const char* kModule = "funcspec";

[[noreturn]] void fail(ErrorCode c, const std::string& detail) { throw Error(c, kModule, detail); }

double to_double(const ExactReal& x) { return x.convert_to<double>(); }

ExactComplex parse_complex(const std::array<std::string, 2>& pair) {
  return {parse_exact(pair[0]), parse_exact(pair[1])};
}

ExactReal modulus_squared(const ExactComplex& a) { return a.re * a.re + a.im * a.im; }

// Puts each non-real value next to its conjugate, upper member first.
void normalize_pairs(std::vector<ExactComplex>& v, std::vector<Rational>& e, const char* name) {
  std::vector<ExactComplex> out_v;
  std::vector<Rational> out_e;
  std::vector<bool> used(v.size(), false);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    if (v[i].im == 0) {
      out_v.push_back(v[i]);
      out_e.push_back(e[i]);
      continue;
    }
    std::size_t partner = v.size();
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (!used[j] && v[j] == v[i].conj()) {
        partner = j;
        break;
      }
    if (partner == v.size())
      fail(ErrorCode::NotConjugateSymmetric, std::string("conjugate missing in ") + name);
    if (e[partner] != e[i])
      fail(ErrorCode::NotConjugateSymmetric,
           std::string("conjugate pair with different exponents in ") + name);
    used[partner] = true;
    std::size_t up = v[i].im > 0 ? i : partner;
    std::size_t dn = up == i ? partner : i;
    out_v.push_back(v[up]);
    out_e.push_back(e[up]);
    out_v.push_back(v[dn]);
    out_e.push_back(e[dn]);
  }
  v = std::move(out_v);
  e = std::move(out_e);
}

void check_family(const std::vector<ExactComplex>& v, const std::vector<Rational>& e,
                  const char* name, bool require_nonreal) {
  if (v.size() != e.size())
    fail(ErrorCode::BadCount, std::string(name) + " and its exponents differ in length");
  if (v.empty() || v.size() % 2 != 0)
    fail(ErrorCode::BadCount, std::string(name) + " must hold a positive even count");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (modulus_squared(v[i]) <= 1)
      fail(ErrorCode::ModulusTooSmall, std::string(name) + "[" + std::to_string(i) + "]");
    if (require_nonreal && v[i].im == 0)
      fail(ErrorCode::NonRealRequired, std::string(name) + "[" + std::to_string(i) + "]");
    for (std::size_t j = 0; j < i; ++j)
      if (v[i] == v[j])
        fail(ErrorCode::DuplicateBranchParameter,
             std::string(name) + "[" + std::to_string(j) + "] == " + name + "[" +
                 std::to_string(i) + "]");
  }
}

Interval parse_interval(const std::array<std::string, 2>& pair) {
  return {parse_exact(pair[0]), parse_exact(pair[1])};
}

}  // namespace

std::complex<double> ExactComplex::to_cd() const { return {to_double(re), to_double(im)}; }

ExactReal parse_exact(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(ErrorCode::BadInput, "empty number");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    ExactReal num = parse_exact(s.substr(0, slash));
    ExactReal den = parse_exact(s.substr(slash + 1));
    if (den == 0) fail(ErrorCode::BadInput, "zero denominator in '" + text + "'");
    return num / den;
  }
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  boost::multiprecision::cpp_int mant = 0;
  int frac_digits = 0;
  bool any_digit = false;
  bool seen_dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mant = mant * 10 + (c - '0');
      any_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!any_digit) fail(ErrorCode::BadInput, "not a number: '" + text + "'");
  long exp10 = -frac_digits;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') fail(ErrorCode::BadInput, "not a number: '" + text + "'");
    ++i;
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(s.substr(i), &used);
    } catch (const std::exception&) {
      fail(ErrorCode::BadInput, "bad exponent in '" + text + "'");
    }
    if (used != s.size() - i || e > 4000 || e < -4000)
      fail(ErrorCode::BadInput, "bad exponent in '" + text + "'");
    exp10 += e;
  }
  ExactReal r(mant);
  boost::multiprecision::cpp_int p = boost::multiprecision::pow(
      boost::multiprecision::cpp_int(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 >= 0)
    r *= ExactReal(p);
  else
    r /= ExactReal(p);
  return neg ? ExactReal(-r) : r;
}

Rational parse_exponent(const std::string& text) {
  ExactReal x = parse_exact(text);
  if (x == ExactReal(1, 2)) return Rational(1, 2);
  if (x == ExactReal(-1, 2)) return Rational(-1, 2);
  fail(ErrorCode::BadInput, "exponent must be +1/2 or -1/2, got '" + text + "'");
}

std::string exact_to_string(const ExactReal& x) {
  if (boost::multiprecision::denominator(x) == 1) return boost::multiprecision::numerator(x).str();
  return boost::multiprecision::numerator(x).str() + "/" +
         boost::multiprecision::denominator(x).str();
}

bool FunctionSpec::all_real() const {
  auto real = [](const ExactComplex& c) { return c.im == 0; };
  return std::all_of(A.begin(), A.end(), real) && std::all_of(B.begin(), B.end(), real);
}

FunctionSpec validate_spec(const RawSpec& raw) {
  FunctionSpec spec;
  if (raw.class_tag == "Z")
    spec.cls = SpecClass::SingleInterval;
  else if (raw.class_tag == "Z2")
    spec.cls = SpecClass::TwoInterval;
  else
    fail(ErrorCode::BadInput, "class must be \"Z\" or \"Z2\", got \"" + raw.class_tag + "\"");

  for (const auto& a : raw.A) spec.A.push_back(parse_complex(a));
  for (const auto& e : raw.alpha) spec.alpha.push_back(parse_exponent(e));
  const bool two = spec.cls == SpecClass::TwoInterval;
  check_family(spec.A, spec.alpha, "A", two);

  Rational total(0);
  for (auto e : spec.alpha) total += e;

  if (two) {
    for (const auto& b : raw.B) spec.B.push_back(parse_complex(b));
    for (const auto& e : raw.beta) spec.beta.push_back(parse_exponent(e));
    check_family(spec.B, spec.beta, "B", true);
    for (auto e : spec.beta) total += e;
    if (raw.intervals.size() != 2) fail(ErrorCode::BadCount, "two intervals required");
    spec.delta1 = parse_interval(raw.intervals[0]);
    spec.delta2 = parse_interval(raw.intervals[1]);
    if (!(spec.delta1.lo < spec.delta1.hi && spec.delta1.hi < spec.delta2.lo &&
          spec.delta2.lo < spec.delta2.hi))
      fail(ErrorCode::BadIntervalOrder, "need e1 < e2 < e3 < e4");
  } else if (!raw.B.empty() || !raw.beta.empty()) {
    fail(ErrorCode::BadInput, "B/beta only allowed for class Z2");
  }

  if (total.denominator() != 1) fail(ErrorCode::ExponentSumNotInteger, "exponent sum is a half-integer");

  normalize_pairs(spec.A, spec.alpha, "A");
  if (two) normalize_pairs(spec.B, spec.beta, "B");
  return spec;
}

std::complex<double> zhukovskii(std::complex<double> A, const Interval& I) {
  double c = to_double((I.lo + I.hi) / 2);
  double r = to_double((I.hi - I.lo) / 2);
  return c + r * 0.5 * (A + 1.0 / A);
}

std::complex<double> inv_zhukovskii(std::complex<double> z, const Interval& I) {
  double c = to_double((I.lo + I.hi) / 2);
  double r = to_double((I.hi - I.lo) / 2);
  std::complex<double> x = (z - c) / r;
  std::complex<double> s = x + std::sqrt(x - 1.0) * std::sqrt(x + 1.0);
  if (std::abs(s) < 1.0) s = 1.0 / s;
  return s;
}

BranchData derived_points(const FunctionSpec& spec) {
  BranchData bd;
  if (spec.cls == SpecClass::SingleInterval) {
    bd.z_branch_points = {-1.0, 1.0};
  } else {
    bd.z_branch_points = {to_double(spec.delta1.lo), to_double(spec.delta1.hi),
                          to_double(spec.delta2.lo), to_double(spec.delta2.hi)};
  }
  for (const auto& A : spec.A) {
    std::complex<double> a = zhukovskii(A.to_cd(), spec.delta1);
    bd.a.push_back(a);
    bd.z_branch_points.push_back(a);
    bd.zeta_images.push_back(1.0 / A.to_cd());
  }
  for (const auto& B : spec.B) {
    std::complex<double> b = zhukovskii(B.to_cd(), spec.delta2);
    bd.b.push_back(b);
    bd.z_branch_points.push_back(b);
  }
  return bd;
}

std::complex<double> evaluate(const FunctionSpec& spec, std::complex<double> z) {
  // A^alpha * (1 - s/A)^alpha with principal roots; matches the germ's choice at infinity.
  auto factor = [](std::complex<double> A, Rational e, std::complex<double> s) {
    std::complex<double> v = std::sqrt(A) * std::sqrt(1.0 - s / A);
    return e > 0 ? v : 1.0 / v;
  };
  std::complex<double> f = 1.0;
  std::complex<double> s1 = 1.0 / inv_zhukovskii(z, spec.delta1);
  for (std::size_t j = 0; j < spec.A.size(); ++j) f *= factor(spec.A[j].to_cd(), spec.alpha[j], s1);
  if (!spec.B.empty()) {
    std::complex<double> s2 = 1.0 / inv_zhukovskii(z, spec.delta2);
    for (std::size_t k = 0; k < spec.B.size(); ++k) f *= factor(spec.B[k].to_cd(), spec.beta[k], s2);
  }
  return f;
}

}  // namespace sheetlab
