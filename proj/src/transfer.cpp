#include "nnaf/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nnaf {

namespace {

double clamped_exp(double u)
{
    return std::exp(std::clamp(u, -max_exp_arg, max_exp_arg));
}

}  // namespace

std::size_t param_count(TransferKind kind)
{
    switch (kind) {
    case TransferKind::SigFix:
    case TransferKind::TanhFix:
        return 0;
    case TransferKind::SigAdp:
    case TransferKind::TanhAdp:
    case TransferKind::Gaussian:
        return 2;
    case TransferKind::Beta:
        return 4;
    }
    throw std::invalid_argument("unknown TransferKind");
}

bool is_fixed(TransferKind kind)
{
    return kind == TransferKind::SigFix || kind == TransferKind::TanhFix;
}

std::string_view to_string(TransferKind kind)
{
    switch (kind) {
    case TransferKind::SigFix: return "sigfix";
    case TransferKind::SigAdp: return "sigadp";
    case TransferKind::TanhFix: return "tanhfix";
    case TransferKind::TanhAdp: return "tanhadp";
    case TransferKind::Gaussian: return "gaussian";
    case TransferKind::Beta: return "beta";
    }
    return "?";
}

std::string_view display_name(TransferKind kind)
{
    switch (kind) {
    case TransferKind::SigFix: return "SigFix";
    case TransferKind::SigAdp: return "SigAdp";
    case TransferKind::TanhFix: return "TanhFix";
    case TransferKind::TanhAdp: return "TanhAdp";
    case TransferKind::Gaussian: return "Gaussian";
    case TransferKind::Beta: return "Beta";
    }
    return "?";
}

std::optional<TransferKind> parse_transfer_kind(std::string_view label)
{
    std::string lower(label);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (auto kind : all_transfer_kinds)
        if (to_string(kind) == lower)
            return kind;
    return std::nullopt;
}

TransferSpec::TransferSpec(TransferKind kind) : kind_(kind)
{
    // Neutral defaults: unit steepness / width / exponents, zero centers.
    switch (kind) {
    case TransferKind::SigAdp:
    case TransferKind::TanhAdp:
    case TransferKind::Gaussian:
        params_[0] = 1.0;
        break;
    case TransferKind::Beta:
        params_ = {0.0, 1.0, 1.0, 1.0};
        break;
    default:
        break;
    }
}

TransferSpec::TransferSpec(TransferKind kind, std::span<const double> params) : kind_(kind)
{
    if (params.size() != param_count(kind))
        throw std::invalid_argument("TransferSpec: " + std::string(to_string(kind)) + " takes " +
                                    std::to_string(param_count(kind)) + " parameters, got " +
                                    std::to_string(params.size()));
    std::copy(params.begin(), params.end(), params_.begin());
}

bool operator==(const TransferSpec& a, const TransferSpec& b)
{
    if (a.kind_ != b.kind_)
        return false;
    const auto pa = a.params();
    const auto pb = b.params();
    return std::equal(pa.begin(), pa.end(), pb.begin());
}

double eval_logistic(double x, double lambda, double theta)
{
    return 1.0 / (1.0 + clamped_exp(-lambda * (x - theta)));
}

double eval_tanh(double x, double lambda, double theta)
{
    // (e^u - e^-u) / (e^u + e^-u) == tanh(u); std::tanh saturates to +-1
    // without overflow for any finite u.
    return std::tanh(std::clamp(lambda * (x - theta), -max_exp_arg, max_exp_arg));
}

double eval_gaussian(double x, double sigma, double mu)
{
    if (sigma == 0.0)
        throw std::domain_error("eval_gaussian: sigma must be non-zero");
    const double d = x - mu;
    return clamped_exp(-(d * d) / (2.0 * sigma * sigma)) /
           (std::sqrt(2.0 * std::numbers::pi) * sigma);
}

std::pair<double, double> beta_support(double theta, double sigma, double p, double q)
{
    return {theta - sigma * p / (p + q), theta + sigma * q / (p + q)};
}

double eval_beta(double x, double theta, double sigma, double p, double q)
{
    if (!(p > 0.0) || !(q > 0.0) || !(sigma > 0.0))
        throw std::domain_error("eval_beta: p, q and sigma must be positive");
    const auto [x0, x1] = beta_support(theta, sigma, p, q);
    if (!(x > x0 && x < x1))
        return 0.0;
    const double scaled = (p + q) * (x - theta) / sigma;
    const double base_a = 1.0 + scaled / p;
    const double base_b = 1.0 - scaled / q;
    // Rounding can push a base to <= 0 right at the support edges.
    if (base_a <= 0.0 || base_b <= 0.0)
        return 0.0;
    return std::pow(base_a, p) * std::pow(base_b, q);
}

double eval(const TransferSpec& spec, double x)
{
    const auto p = spec.params();
    switch (spec.kind()) {
    case TransferKind::SigFix: return eval_logistic(x, 1.0, 0.0);
    case TransferKind::TanhFix: return eval_tanh(x, 1.0, 0.0);
    case TransferKind::SigAdp: return eval_logistic(x, p[0], p[1]);
    case TransferKind::TanhAdp: return eval_tanh(x, p[0], p[1]);
    case TransferKind::Gaussian: return eval_gaussian(x, p[0], p[1]);
    case TransferKind::Beta: return eval_beta(x, p[0], p[1], p[2], p[3]);
    }
    throw std::invalid_argument("eval: unknown TransferKind");
}

double derivative_from_output(TransferKind kind, double phi)
{
    switch (kind) {
    case TransferKind::SigFix: return phi * (1.0 - phi);
    case TransferKind::TanhFix: return 1.0 - phi * phi;
    default:
        throw std::invalid_argument("derivative: only sigfix and tanhfix are differentiable here, got " +
                                    std::string(to_string(kind)));
    }
}

double eval_derivative(const TransferSpec& spec, double x)
{
    if (!is_fixed(spec.kind()))
        return derivative_from_output(spec.kind(), 0.0);  // throws
    return derivative_from_output(spec.kind(), eval(spec, x));
}

}  // namespace nnaf
