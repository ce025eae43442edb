#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>

namespace nnaf {

/// Transfer-function family applied at every active (hidden and output) node.
enum class TransferKind { SigFix, SigAdp, TanhFix, TanhAdp, Gaussian, Beta };

inline constexpr std::array<TransferKind, 6> all_transfer_kinds{
    TransferKind::SigFix,  TransferKind::SigAdp,   TransferKind::TanhFix,
    TransferKind::TanhAdp, TransferKind::Gaussian, TransferKind::Beta};

/// Number of optimizable shape parameters one node of this family carries.
std::size_t param_count(TransferKind kind);

bool is_fixed(TransferKind kind);

/// Lowercase CLI label ("sigfix", "tanhadp", ...).
std::string_view to_string(TransferKind kind);
/// Row label used in result tables ("SigFix", "TanhAdp", ...).
std::string_view display_name(TransferKind kind);
std::optional<TransferKind> parse_transfer_kind(std::string_view label);

/// A node's function family plus its live parameter values.
///
/// Parameter order per family:
///   SigAdp, TanhAdp: (lambda, theta)   steepness, center
///   Gaussian:        (sigma, mu)       width, center
///   Beta:            (theta, sigma, p, q)
/// Fixed families carry no parameters and evaluate with lambda = 1, theta = 0.
class TransferSpec {
public:
    static constexpr std::size_t max_params = 4;

    explicit TransferSpec(TransferKind kind = TransferKind::SigFix);
    /// Throws std::invalid_argument when params.size() != param_count(kind).
    TransferSpec(TransferKind kind, std::span<const double> params);

    TransferKind kind() const { return kind_; }
    std::span<const double> params() const { return {params_.data(), param_count(kind_)}; }
    std::span<double> params() { return {params_.data(), param_count(kind_)}; }

    friend bool operator==(const TransferSpec& a, const TransferSpec& b);

private:
    TransferKind kind_;
    std::array<double, max_params> params_{};
};

// Exponent arguments are clamped to this magnitude before exp().
inline constexpr double max_exp_arg = 500.0;

double eval_logistic(double x, double lambda, double theta);
double eval_tanh(double x, double lambda, double theta);
/// Throws std::domain_error when sigma == 0.
double eval_gaussian(double x, double sigma, double mu);
/// Beta basis function; zero outside its open support (x0, x1), exactly 1 at theta.
/// Throws std::domain_error unless p, q and sigma are all positive.
double eval_beta(double x, double theta, double sigma, double p, double q);

/// Support bounds (x0, x1) of the Beta basis function.
std::pair<double, double> beta_support(double theta, double sigma, double p, double q);

double eval(const TransferSpec& spec, double x);

/// d(phi)/dx. Only the fixed families are supported (they are the only ones
/// trained by gradient descent); others throw std::invalid_argument.
double eval_derivative(const TransferSpec& spec, double x);

/// Derivative expressed through the activation value phi = eval(spec, x).
double derivative_from_output(TransferKind kind, double phi);

}  // namespace nnaf
