#include "tadecay/errors.hpp"
#include "tadecay/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tadecay {

ResonancePole::ResonancePole(double e_r, double gamma, cplx residue)
    : e_r_(e_r), gamma_(gamma), residue_(residue) {
    if (!std::isfinite(e_r)) throw ValidationError("resonance energy must be finite");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("resonance width must be > 0");
    if (!std::isfinite(residue.real()) || !std::isfinite(residue.imag()))
        throw ValidationError("residue must be finite");
}

Duration::Duration(double t) : t_(t) {
    if (std::isnan(t)) throw NegativeDuration("duration is NaN");
    if (t < 0.0) throw NegativeDuration("negative duration rejected: t = " + std::to_string(t));
}

EnergyGrid::EnergyGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 8) throw ValidationError("energy grid needs at least 8 points");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i])) throw ValidationError("energy grid point is not finite");
        if (i > 0 && !(points_[i] > points_[i - 1]))
            throw ValidationError("energy grid must be strictly increasing");
    }
    const double h = spacing();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    // Relative 1e-12 on the spacing, plus the rounding of abscissae generated
    // as lo + i*h.
    const double mag = std::max({std::abs(points_.front()), std::abs(points_.back()),
                                 points_.back() - points_.front()});
    const double slack = 1e-12 * h + 16.0 * eps * mag;
    uniform_ = true;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        const double d = points_[i] - points_[i - 1];
        if (std::abs(d - h) > slack) {
            uniform_ = false;
            break;
        }
    }
}

EnergyGrid EnergyGrid::uniform(double lo, double hi, std::size_t n) {
    if (n < 8) throw ValidationError("energy grid needs at least 8 points");
    if (!(hi > lo)) throw ValidationError("energy grid needs hi > lo");
    std::vector<double> p(n);
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) p[i] = lo + h * static_cast<double>(i);
    p.back() = hi;
    return EnergyGrid(std::move(p));
}

double EnergyGrid::spacing() const noexcept {
    return (points_.back() - points_.front()) / static_cast<double>(points_.size() - 1);
}

SampledWaveFunction::SampledWaveFunction(EnergyGrid grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw ValidationError("sample count does not match the grid");
    for (const cplx& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ValidationError("wave function sample is not finite");
}

double SampledWaveFunction::l2_norm_sq() const {
    const auto& x = grid_.points();
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        s += 0.5 * (x[i + 1] - x[i]) * (std::norm(values_[i]) + std::norm(values_[i + 1]));
    return s;
}

SampledWaveFunction SampledWaveFunction::conjugate() const {
    std::vector<cplx> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), [](cplx c) { return std::conj(c); });
    return SampledWaveFunction(grid_, std::move(v));
}

namespace {

int term_degree(const RationalTerm& t) {
    int d = 0;
    for (const PoleFactor& p : t.poles) d += p.order;
    return d;
}

} // namespace

RationalTestFunction::RationalTestFunction(cplx numerator, std::vector<PoleFactor> poles)
    : RationalTestFunction(std::vector<RationalTerm>{{numerator, std::move(poles)}}) {}

RationalTestFunction::RationalTestFunction(std::vector<RationalTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw ValidationError("test function needs at least one term");
    for (const RationalTerm& t : terms_) {
        if (term_degree(t) < 2) throw ValidationError("test function term must decay at least like 1/E^2");
        for (const PoleFactor& p : t.poles) {
            if (p.order < 1) throw ValidationError("pole order must be >= 1");
            if (!std::isfinite(p.location.real()) || !std::isfinite(p.location.imag()))
                throw ValidationError("pole location must be finite");
            if (p.location.imag() == 0.0) throw ValidationError("test function pole on the real axis");
            const int side = p.location.imag() > 0.0 ? 1 : -1;
            if (half_plane_ == 0) half_plane_ = side;
            if (side != half_plane_)
                throw ValidationError("test function poles must share one half-plane");
        }
    }
}

cplx RationalTestFunction::operator()(cplx e) const {
    cplx sum = 0.0;
    for (const RationalTerm& t : terms_) {
        cplx den = 1.0;
        for (const PoleFactor& p : t.poles) {
            const cplx d = e - p.location;
            for (int k = 0; k < p.order; ++k) den *= d;
        }
        sum += t.numerator / den;
    }
    return sum;
}

int RationalTestFunction::decay_degree() const noexcept {
    int d = std::numeric_limits<int>::max();
    for (const RationalTerm& t : terms_) d = std::min(d, term_degree(t));
    return d;
}

std::vector<cplx> RationalTestFunction::pole_locations() const {
    std::vector<cplx> out;
    for (const RationalTerm& t : terms_)
        for (const PoleFactor& p : t.poles) out.push_back(p.location);
    return out;
}

RationalTestFunction RationalTestFunction::conjugate() const {
    std::vector<RationalTerm> terms = terms_;
    for (RationalTerm& t : terms) {
        t.numerator = std::conj(t.numerator);
        for (PoleFactor& p : t.poles) p.location = std::conj(p.location);
    }
    return RationalTestFunction(std::move(terms));
}

RationalTestFunction RationalTestFunction::operator+(const RationalTestFunction& o) const {
    std::vector<RationalTerm> terms = terms_;
    terms.insert(terms.end(), o.terms_.begin(), o.terms_.end());
    return RationalTestFunction(std::move(terms));
}

RationalTestFunction RationalTestFunction::operator*(cplx c) const {
    std::vector<RationalTerm> terms = terms_;
    for (RationalTerm& t : terms) t.numerator *= c;
    return RationalTestFunction(std::move(terms));
}

} // namespace tadecay
