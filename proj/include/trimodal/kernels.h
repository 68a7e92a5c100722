#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace trimodal {

enum class KernelType { normal, laplace, logistic, cauchy, student_t, gumbel };

// h(y) = C / (shift + y)^power, the factor in g'(x) = -x h(x^2) g(x).
struct HFunction {
  enum class Kind { constant, inverse_sqrt, cauchy_like, student_like };
  Kind kind = Kind::constant;
  double C = 1.0;
  double shift = 0.0;
  double power = 0.0;

  double operator()(double y) const;
};

// Base density g on the real line. Student-t carries its degrees of freedom.
class Kernel {
public:
  explicit Kernel(KernelType type = KernelType::normal, double nu = 0.0);

  static Kernel from_name(std::string_view name, std::optional<double> nu = std::nullopt);

  KernelType type() const { return type_; }
  std::string name() const;
  std::optional<double> shape_param() const;
  bool symmetric() const { return type_ != KernelType::gumbel; }

  double pdf(double x) const;
  double log_pdf(double x) const;
  double cdf(double x) const;
  // 1 - cdf(x) without cancellation in the right tail.
  double sf(double x) const;
  double quantile(double u) const;
  // g'(x)/g(x)
  double log_pdf_derivative_ratio(double x) const;
  HFunction h_function() const;
  // E[W^(2k)]; throws DomainError if it does not exist.
  double even_moment(int k) const;
  // Largest n with E|W|^n finite, or infinity.
  double moment_limit() const;

private:
  KernelType type_;
  double nu_;
  double t_lognorm_ = 0.0;
};

} // namespace trimodal
