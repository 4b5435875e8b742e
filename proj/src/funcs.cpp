#include "szmk/funcs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace szmk {

namespace {

constexpr double kFiniteDiffStep = 1e-5;

BVMetadata smooth_bv(const RealFn& d1) { return BVMetadata{d1, d1, {}}; }

double parse_parameter(std::string_view name, std::string_view base) {
  auto rest = name.substr(base.size());
  if (rest.empty()) return 1.0;
  if (rest.front() != '(' || rest.back() != ')') {
    throw std::invalid_argument("malformed parametric function name: " + std::string(name));
  }
  std::string inner(rest.substr(1, rest.size() - 2));
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(inner, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != inner.size()) {
    throw std::invalid_argument("bad parameter in function name: " + std::string(name));
  }
  return value;
}

double relative_deviation(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max(1.0, std::abs(analytic));
}

}  // namespace

std::string_view to_string(GrowthClass growth) {
  switch (growth) {
    case GrowthClass::kBounded:
      return "BOUNDED";
    case GrowthClass::kPolynomial:
      return "POLYNOMIAL";
    case GrowthClass::kExponential:
      return "EXPONENTIAL";
  }
  return "UNKNOWN";
}

double TestFunction::derivative(double t) const {
  if (!d1) throw std::invalid_argument("function '" + name + "' has no first derivative");
  return (*d1)(t);
}

double TestFunction::second_derivative(double t) const {
  if (!d2) throw std::invalid_argument("function '" + name + "' has no second derivative");
  return (*d2)(t);
}

TestFunction monomial(int degree) {
  if (degree < 0) throw std::invalid_argument("monomial degree must be non-negative");
  if (degree == 0) {
    auto f = constant_function(1.0);
    f.name = "e0";
    return f;
  }
  TestFunction f;
  f.name = "e" + std::to_string(degree);
  const double n = degree;
  f.eval = [degree](double t) { return std::pow(t, degree); };
  f.d1 = [degree, n](double t) { return n * std::pow(t, degree - 1); };
  if (degree == 1) {
    f.d2 = [](double) { return 0.0; };
  } else {
    f.d2 = [degree, n](double t) { return n * (n - 1) * std::pow(t, degree - 2); };
  }
  f.growth = GrowthClass::kPolynomial;
  f.bv = smooth_bv(*f.d1);
  // e1 has constant derivative, so f'_x vanishes identically.
  if (degree == 1) f.bv->aux_tv = [](double, double, double) { return 0.0; };
  return f;
}

TestFunction constant_function(double c) {
  TestFunction f;
  std::ostringstream name;
  name << "constant(" << c << ")";
  f.name = name.str();
  f.eval = [c](double) { return c; };
  f.d1 = [](double) { return 0.0; };
  f.d2 = [](double) { return 0.0; };
  f.growth = GrowthClass::kBounded;
  f.bv = smooth_bv(*f.d1);
  f.bv->aux_tv = [](double, double, double) { return 0.0; };
  f.constant_value = c;
  return f;
}

TestFunction abs_shift(double c) {
  TestFunction f;
  std::ostringstream name;
  name << "abs_shift(" << c << ")";
  f.name = name.str();
  f.eval = [c](double t) { return std::abs(t - c); };
  // Right derivative at the kink.
  f.d1 = [c](double t) { return t >= c ? 1.0 : -1.0; };
  f.d2 = [](double) { return 0.0; };
  f.growth = GrowthClass::kPolynomial;
  BVMetadata bv;
  bv.dplus = [c](double t) { return t >= c ? 1.0 : -1.0; };
  bv.dminus = [c](double t) { return t > c ? 1.0 : -1.0; };
  // f'_x is zero except for a jump of height 2 at the kink when x != c.
  bv.aux_tv = [c](double x, double lo, double hi) {
    return (x != c && lo < c && c <= hi) ? 2.0 : 0.0;
  };
  f.bv = std::move(bv);
  return f;
}

TestFunction product(const TestFunction& lhs, const TestFunction& rhs) {
  TestFunction f;
  f.name = lhs.name + "*" + rhs.name;
  f.eval = [a = lhs.eval, b = rhs.eval](double t) { return a(t) * b(t); };
  if (lhs.d1 && rhs.d1) {
    f.d1 = [a = lhs.eval, b = rhs.eval, da = *lhs.d1, db = *rhs.d1](double t) {
      return da(t) * b(t) + a(t) * db(t);
    };
    if (lhs.d2 && rhs.d2) {
      f.d2 = [a = lhs.eval, b = rhs.eval, da = *lhs.d1, db = *rhs.d1, dda = *lhs.d2,
              ddb = *rhs.d2](double t) {
        return dda(t) * b(t) + 2.0 * da(t) * db(t) + a(t) * ddb(t);
      };
    }
    f.bv = smooth_bv(*f.d1);
  }
  f.growth = std::max(lhs.growth, rhs.growth);
  if (lhs.constant_value && rhs.constant_value) {
    f.constant_value = *lhs.constant_value * *rhs.constant_value;
  }
  return f;
}

TestFunction second_derivative_of(const TestFunction& f) {
  if (!f.d2) throw std::invalid_argument("function '" + f.name + "' has no second derivative");
  TestFunction g;
  g.name = f.name + "''";
  g.eval = *f.d2;
  g.growth = f.growth;
  return g;
}

std::vector<std::string> registry_names() {
  return {"e0", "e1", "e2", "e3", "e4", "x2expx", "xcos2x1", "sqrt", "cos", "abs_shift(c)",
          "constant(c)"};
}

TestFunction registry_get(std::string_view name) {
  if (name.size() == 2 && name[0] == 'e' && name[1] >= '0' && name[1] <= '4') {
    return monomial(name[1] - '0');
  }
  if (name == "x2expx") {
    TestFunction f;
    f.name = "x2expx";
    f.eval = [](double t) { return t * t * std::exp(t); };
    f.d1 = [](double t) { return (t * t + 2.0 * t) * std::exp(t); };
    f.d2 = [](double t) { return (t * t + 4.0 * t + 2.0) * std::exp(t); };
    f.growth = GrowthClass::kExponential;
    f.bv = smooth_bv(*f.d1);
    return f;
  }
  if (name == "xcos2x1") {
    TestFunction f;
    f.name = "xcos2x1";
    f.eval = [](double t) { return t * std::cos(2.0 * t + 1.0); };
    f.d1 = [](double t) { return std::cos(2.0 * t + 1.0) - 2.0 * t * std::sin(2.0 * t + 1.0); };
    f.d2 = [](double t) {
      return -4.0 * std::sin(2.0 * t + 1.0) - 4.0 * t * std::cos(2.0 * t + 1.0);
    };
    f.growth = GrowthClass::kPolynomial;
    f.bv = smooth_bv(*f.d1);
    return f;
  }
  if (name == "sqrt") {
    TestFunction f;
    f.name = "sqrt";
    f.eval = [](double t) { return std::sqrt(t); };
    f.d1 = [](double t) { return 0.5 / std::sqrt(t); };
    f.d2 = [](double t) { return -0.25 / (t * std::sqrt(t)); };
    f.growth = GrowthClass::kPolynomial;
    return f;
  }
  if (name == "cos") {
    TestFunction f;
    f.name = "cos";
    f.eval = [](double t) { return std::cos(t); };
    f.d1 = [](double t) { return -std::sin(t); };
    f.d2 = [](double t) { return -std::cos(t); };
    f.growth = GrowthClass::kBounded;
    f.bv = smooth_bv(*f.d1);
    return f;
  }
  if (name.starts_with("abs_shift")) return abs_shift(parse_parameter(name, "abs_shift"));
  if (name.starts_with("constant")) return constant_function(parse_parameter(name, "constant"));

  std::string message = "unknown function '" + std::string(name) + "'; available:";
  for (const auto& known : registry_names()) message += " " + known;
  throw std::invalid_argument(message);
}

DerivativeDeviation finite_diff_check(const TestFunction& f, double x) {
  if (!f.d1) throw std::invalid_argument("function '" + f.name + "' has no first derivative");
  const double h = kFiniteDiffStep;
  DerivativeDeviation out;
  const double fd1 = (f(x + h) - f(x - h)) / (2.0 * h);
  out.d1 = relative_deviation((*f.d1)(x), fd1);
  if (f.d2) {
    const double fd2 = ((*f.d1)(x + h) - (*f.d1)(x - h)) / (2.0 * h);
    out.d2 = relative_deviation((*f.d2)(x), fd2);
  }
  return out;
}

}  // namespace szmk
