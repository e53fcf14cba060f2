#include "ebnd/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ebnd/errors.hpp"

namespace ebnd {

namespace {

// Raw-frame tail level, defined for LinearTail and PowerTail.
double raw_tail_level(const TailRule& rule, double i) {
    if (const auto* lin = std::get_if<LinearTail>(&rule)) {
        return lin->slope * i + lin->offset;
    }
    if (const auto* pow = std::get_if<PowerTail>(&rule)) {
        return pow->scale * std::pow(i, pow->exponent);
    }
    throw NonMonotoneGenerator("affine-floor tail has no level values");
}

}  // namespace

double Spectrum::level(std::size_t i) const {
    if (i < head_.size()) return head_[i];
    if (!tail_) {
        std::ostringstream os;
        os << "level index " << i << " out of range for finite spectrum of size " << head_.size();
        throw DomainError(os.str());
    }
    return raw_tail_level(*tail_, static_cast<double>(i + index_offset_)) - shift_;
}

bool Spectrum::can_materialize(std::size_t i) const {
    if (i < head_.size()) return true;
    return tail_.has_value() && !tail_is_floor_only();
}

double Spectrum::gap() const {
    if (head_.size() >= 2) return head_[1];
    if (!tail_) throw TooFewLevels("spectral gap needs at least two levels");
    return level(1);
}

std::size_t Spectrum::ground_multiplicity() const {
    const double h0 = head_.front();
    std::size_t n = 0;
    while (n < head_.size() && head_[n] == h0) ++n;
    return n;
}

AffineFloor Spectrum::affine_floor(std::size_t anchor) const {
    if (!tail_) return {0.0, 0.0};
    const double a = static_cast<double>(anchor + index_offset_);
    if (const auto* lin = std::get_if<LinearTail>(&*tail_)) {
        // exact: l(i) = slope*(i + off) + offset - shift
        return {lin->slope, lin->slope * static_cast<double>(index_offset_) + lin->offset - shift_};
    }
    if (const auto* pw = std::get_if<PowerTail>(&*tail_)) {
        // tangent at the anchor; convexity (exponent >= 1) makes it a lower
        // bound for all raw indices >= anchor
        const double c = pw->scale * pw->exponent * std::pow(a, pw->exponent - 1.0);
        const double value = pw->scale * std::pow(a, pw->exponent) - shift_;
        return {c, value - c * static_cast<double>(anchor)};
    }
    const auto& fl = std::get<AffineFloorTail>(*tail_);
    return {fl.slope, fl.slope * static_cast<double>(index_offset_) + fl.intercept - shift_};
}

Spectrum validate(std::vector<double> raw_levels, std::optional<TailRule> generator,
                  std::string name) {
    if (raw_levels.empty()) throw EmptySpectrum("spectrum has no levels");
    for (double h : raw_levels) {
        if (!std::isfinite(h)) throw NonFiniteLevel("spectrum level is not finite");
    }
    std::sort(raw_levels.begin(), raw_levels.end());
    const double shift = raw_levels.front();

    Spectrum s;
    s.shift_ = shift;
    s.name_ = std::move(name);
    s.head_.reserve(raw_levels.size());
    for (double h : raw_levels) s.head_.push_back(h - shift);
    s.head_.front() = 0.0;  // exact ground

    if (generator) {
        const double h_raw = static_cast<double>(s.head_.size());
        if (const auto* lin = std::get_if<LinearTail>(&*generator)) {
            if (!(lin->slope > 0.0) || !std::isfinite(lin->slope) || !std::isfinite(lin->offset))
                throw NonMonotoneGenerator("linear tail requires finite parameters and slope > 0");
            if (lin->slope * h_raw + lin->offset < raw_levels.back())
                throw NonMonotoneGenerator("linear tail starts below the last explicit level");
        } else if (const auto* pw = std::get_if<PowerTail>(&*generator)) {
            if (!(pw->exponent >= 1.0) || !(pw->scale > 0.0) || !std::isfinite(pw->exponent) ||
                !std::isfinite(pw->scale))
                throw NonMonotoneGenerator("power tail requires exponent >= 1 and scale > 0");
            if (pw->scale * std::pow(h_raw, pw->exponent) < raw_levels.back())
                throw NonMonotoneGenerator("power tail starts below the last explicit level");
        } else {
            const auto& fl = std::get<AffineFloorTail>(*generator);
            if (!(fl.slope > 0.0) || !std::isfinite(fl.slope) || !std::isfinite(fl.intercept))
                throw NonMonotoneGenerator("affine floor requires finite parameters and slope > 0");
            // necessary condition: the floor must sit below the known levels
            for (std::size_t i = 0; i < raw_levels.size(); ++i) {
                if (fl.slope * static_cast<double>(i) + fl.intercept > raw_levels[i] + 1e-12)
                    throw NonMonotoneGenerator("affine floor exceeds an explicit level");
            }
        }
        s.tail_ = *generator;
    }
    return s;
}

Spectrum shift_plus(const Spectrum& s) {
    if (s.head_.size() < 2 && s.is_finite())
        throw TooFewLevels("shift_plus needs at least two levels");
    Spectrum out;
    out.head_.assign(s.head_.begin() + 1, s.head_.end());
    if (out.head_.empty()) {
        // head exhausted: materialize the first tail level
        out.head_.push_back(s.level(1));
    }
    out.tail_ = s.tail_;
    out.shift_ = s.shift_;
    out.index_offset_ = s.index_offset_ + 1;
    out.name_ = s.name_.empty() ? std::string{} : s.name_ + "+";
    return out;
}

namespace {

struct TailBounds {
    double weight = 0.0;
    double energy = 0.0;
};

// Certified upper bounds on sum_{i >= n} e^{-beta h_i} and
// sum_{i >= n} h_i e^{-beta h_i}, from the affine floor l(i) = c i + d:
//   sum_{i >= n} e^{-beta l(i)} = e^{-beta l(n)} / (1 - e^{-beta c}),
// and for the energy sum, valid once l(n) >= 1/beta (x e^{-beta x}
// decreasing there),
//   sum_{i >= n} l(i) e^{-beta l(i)} = e^{-beta l(n)} [ l(n)/(1-q) + c q/(1-q)^2 ].
TailBounds affine_tail_bounds(const AffineFloor& fl, std::size_t n, double beta) {
    const double ln = fl.at(static_cast<double>(n));
    const double q = std::exp(-beta * fl.slope);
    const double one_minus_q = -std::expm1(-beta * fl.slope);
    const double e0 = std::exp(-beta * ln);
    // small inflation keeps the certificate sound against summation round-off
    constexpr double margin = 1.0 + 1e-9;
    TailBounds tb;
    tb.weight = margin * e0 / one_minus_q;
    tb.energy = margin * e0 * (ln / one_minus_q + fl.slope * q / (one_minus_q * one_minus_q));
    return tb;
}

bool energy_bound_valid(const AffineFloor& fl, std::size_t n, double beta) {
    return fl.at(static_cast<double>(n)) >= 1.0 / beta;
}

}  // namespace

TruncationPlan plan_truncation(const Spectrum& s, double beta, double tol) {
    if (!(tol > 0.0)) throw DomainError("truncation tolerance must be positive");
    if (s.is_finite()) {
        return {s.size(), 0.0, -std::numeric_limits<double>::infinity()};
    }
    if (!(beta >= limits::beta_floor)) {
        throw BetaTooSmall("beta under the 1e-12 floor; treat the E -> infinity regime separately");
    }

    const std::size_t head = s.head_size();

    // Smallest anchor n >= head with a certified tail. The floor-only kind is
    // capped at the head; generated kinds may grow (doubling, capped).
    std::size_t n = head;
    if (s.tail_is_floor_only()) {
        const AffineFloor fl = s.affine_floor(n);
        if (!energy_bound_valid(fl, n, beta))
            throw BetaTooSmall("explicit head too short to certify the tail at this beta");
        const TailBounds tb = affine_tail_bounds(fl, n, beta);
        if (!(std::max(tb.weight, tb.energy) < tol))
            throw BetaTooSmall("explicit head too short to certify the tail at this beta");
    } else {
        while (true) {
            const AffineFloor fl = s.affine_floor(n);
            if (energy_bound_valid(fl, n, beta)) {
                const TailBounds tb = affine_tail_bounds(fl, n, beta);
                if (std::max(tb.weight, tb.energy) < tol) break;
            }
            if (n >= limits::cutoff_cap)
                throw BetaTooSmall("certified cutoff exceeds the cap; beta too small for this tolerance");
            n = std::max(n + 1, std::min<std::size_t>(2 * n, limits::cutoff_cap));
        }
        // binary search the minimal anchor in [head, n]
        std::size_t lo = head, hi = n;
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            const AffineFloor fl = s.affine_floor(mid);
            bool ok = false;
            if (energy_bound_valid(fl, mid, beta)) {
                const TailBounds tb = affine_tail_bounds(fl, mid, beta);
                ok = std::max(tb.weight, tb.energy) < tol;
            }
            if (ok)
                hi = mid;
            else
                lo = mid + 1;
        }
        n = lo;
    }

    // The omitted tail may begin inside the materializable range: walk the
    // cutoff down while the exact terms plus the generator bound stay under tol.
    const AffineFloor fl = s.affine_floor(n);
    TailBounds tb = affine_tail_bounds(fl, n, beta);
    std::size_t cutoff = n;
    while (cutoff > 1) {
        const double h = s.level(cutoff - 1);
        const double w = std::exp(-beta * h);
        if (std::max(tb.weight + w, tb.energy + h * w) >= tol) break;
        tb.weight += w;
        tb.energy += h * w;
        --cutoff;
    }
    return {cutoff, std::max(tb.weight, tb.energy), beta};
}

}  // namespace ebnd
