#include "ebnd/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "ebnd/config.hpp"
#include "ebnd/errors.hpp"

namespace ebnd {

namespace {

double eta(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }

void check_weights(const std::vector<double>& w, double tail) {
    if (w.empty()) throw DomainError("distribution needs at least one entry");
    if (!(tail >= 0.0) || tail >= 1.0) throw DomainError("tail mass outside [0,1)");
    for (double x : w) {
        if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("negative or non-finite weight");
    }
}

}  // namespace

Distribution Distribution::from_weights(std::size_t support_offset, std::vector<double> weights,
                                        double tail_mass) {
    check_weights(weights, tail_mass);
    double sum = 0.0;
    for (double x : weights) sum += x;
    if (!(sum > 0.0)) throw DomainError("distribution weights sum to zero");
    const double scale = (1.0 - tail_mass) / sum;
    for (double& x : weights) x *= scale;

    Distribution d;
    d.offset_ = support_offset;
    d.probs_ = std::move(weights);
    d.tail_ = tail_mass;
    return d;
}

Distribution Distribution::point_mass(std::size_t index) {
    Distribution d;
    d.offset_ = index;
    d.probs_ = {1.0};
    d.tail_ = 0.0;
    return d;
}

double Distribution::at(std::size_t absolute_index) const {
    if (absolute_index < offset_) return 0.0;
    const std::size_t i = absolute_index - offset_;
    return i < probs_.size() ? probs_[i] : 0.0;
}

JointDistribution JointDistribution::from_weights(std::size_t rows, std::size_t cols,
                                                  std::vector<double> weights, double tail_mass) {
    if (rows == 0 || cols == 0 || weights.size() != rows * cols)
        throw DomainError("joint distribution shape mismatch");
    check_weights(weights, tail_mass);
    double sum = 0.0;
    for (double x : weights) sum += x;
    if (!(sum > 0.0)) throw DomainError("joint weights sum to zero");
    const double scale = (1.0 - tail_mass) / sum;
    for (double& x : weights) x *= scale;

    JointDistribution j;
    j.rows_ = rows;
    j.cols_ = cols;
    j.probs_ = std::move(weights);
    j.tail_ = tail_mass;
    return j;
}

Distribution JointDistribution::marginal_x() const {
    std::vector<double> m(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m[i] += at(i, j);
    return Distribution::from_weights(0, std::move(m), tail_);
}

Distribution JointDistribution::marginal_y() const {
    std::vector<double> m(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m[j] += at(i, j);
    return Distribution::from_weights(0, std::move(m), tail_);
}

double shannon_entropy(const Distribution& d) {
    double h = 0.0;
    for (double p : d.probs()) h += eta(p);
    return from_nats(h);
}

double entropy_tail_bar(const Distribution& d) { return from_nats(eta(d.certified_tail())); }

double conditional_entropy(const JointDistribution& j) {
    double h_joint = 0.0;
    std::vector<double> py(j.cols(), 0.0);
    for (std::size_t i = 0; i < j.rows(); ++i) {
        for (std::size_t k = 0; k < j.cols(); ++k) {
            h_joint += eta(j.at(i, k));
            py[k] += j.at(i, k);
        }
    }
    double h_y = 0.0;
    for (double p : py) h_y += eta(p);
    return from_nats(h_joint - h_y);
}

double tv_distance(const Distribution& p, const Distribution& q) {
    const std::size_t lo = std::min(p.support_offset(), q.support_offset());
    const std::size_t hi = std::max(p.support_offset() + p.size(), q.support_offset() + q.size());
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) sum += std::abs(p.at(i) - q.at(i));
    return 0.5 * sum;
}

double tv_error_bar(const Distribution& p, const Distribution& q) {
    return 0.5 * (p.certified_tail() + q.certified_tail());
}

double expected_f(const Distribution& d, const Spectrum& s) {
    const std::size_t end = d.support_offset() + d.size();
    if (s.is_finite() && end > s.size())
        throw IncompatibleSupport("distribution support extends past the finite spectrum");
    if (!s.can_materialize(end == 0 ? 0 : end - 1))
        throw IncompatibleSupport("spectrum levels not materializable over the support");
    double sum = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
        sum += s.level(d.support_offset() + i) * d.probs()[i];
    return sum;
}

}  // namespace ebnd
