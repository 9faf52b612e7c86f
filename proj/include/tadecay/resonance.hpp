#pragma once

#include "tadecay/quadrature.hpp"
#include "tadecay/units.hpp"

#include <complex>
#include <span>
#include <vector>

namespace tadecay {

using cplx = std::complex<double>;

// S-matrix pole z_R = e_r - i gamma/2 with a complex residue.
class ResonancePole {
public:
    ResonancePole(double e_r, double gamma, cplx residue = 1.0);

    double e_r() const noexcept { return e_r_; }
    double gamma() const noexcept { return gamma_; }
    cplx residue() const noexcept { return residue_; }
    cplx z() const noexcept { return {e_r_, -0.5 * gamma_}; }

private:
    double e_r_;
    double gamma_;
    cplx residue_;
};

// A non-negative time. Negative values are rejected on construction.
class Duration {
public:
    explicit Duration(double t);
    double value() const noexcept { return t_; }

private:
    double t_;
};

class EnergyGrid {
public:
    explicit EnergyGrid(std::vector<double> points);
    // n points from lo to hi inclusive.
    static EnergyGrid uniform(double lo, double hi, std::size_t n);

    const std::vector<double>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool is_uniform() const noexcept { return uniform_; }
    // Mean spacing; exact for uniform grids.
    double spacing() const noexcept;

private:
    std::vector<double> points_;
    bool uniform_ = false;
};

class SampledWaveFunction {
public:
    SampledWaveFunction(EnergyGrid grid, std::vector<cplx> values);

    template <class F>
    static SampledWaveFunction sample(const EnergyGrid& grid, F&& f) {
        std::vector<cplx> v;
        v.reserve(grid.size());
        for (double e : grid.points()) v.push_back(f(e));
        return SampledWaveFunction(grid, std::move(v));
    }

    const EnergyGrid& grid() const noexcept { return grid_; }
    const std::vector<cplx>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    // Trapezoid-rule integral of |f|^2.
    double l2_norm_sq() const;
    SampledWaveFunction conjugate() const;

private:
    EnergyGrid grid_;
    std::vector<cplx> values_;
};

struct PoleFactor {
    cplx location;
    int order = 1;
};

struct RationalTerm {
    cplx numerator;
    std::vector<PoleFactor> poles;
};

// Sum of terms numerator / prod (E - p_k)^{m_k}. Every pole lies in the same
// open half-plane and each term decays at least like 1/E^2.
class RationalTestFunction {
public:
    RationalTestFunction(cplx numerator, std::vector<PoleFactor> poles);
    explicit RationalTestFunction(std::vector<RationalTerm> terms);

    cplx operator()(cplx e) const;
    // +1 if the poles are in the upper half-plane, -1 if in the lower.
    int half_plane() const noexcept { return half_plane_; }
    int decay_degree() const noexcept;
    const std::vector<RationalTerm>& terms() const noexcept { return terms_; }
    std::vector<cplx> pole_locations() const;

    RationalTestFunction conjugate() const;
    RationalTestFunction operator+(const RationalTestFunction& o) const;
    RationalTestFunction operator*(cplx c) const;

private:
    std::vector<RationalTerm> terms_;
    int half_plane_ = 0;
};

enum class Domain { FullLine, HalfLine };

cplx bw_amplitude(double e, const ResonancePole& pole);
cplx gamow_density(double e, const ResonancePole& pole);
double lorentzian_norm(const ResonancePole& pole, Domain domain);

// Raw quadrature of  int test(E) exp(-i E t / hbar) / (E - z) dE  with no
// half-plane checks. cauchy_pairing and evolved_pairing validate and call it.
quad::Result line_pairing(const RationalTestFunction& test, cplx z, double t, Units units = {},
                          const quad::Options& opt = {});

// Residue value -2 pi i test(z_R).
cplx residue_pairing(const RationalTestFunction& test, const ResonancePole& pole);

cplx cauchy_pairing(const RationalTestFunction& test, const ResonancePole& pole,
                    const quad::Options& opt = {});

struct DefectReport {
    double defect;
    cplx test_integral;
};

DefectReport eigenvalue_defect(const RationalTestFunction& test, const ResonancePole& pole,
                               const quad::Options& opt = {});

cplx evolved_pairing(const RationalTestFunction& test, const ResonancePole& pole, double t,
                     Units units = {}, const quad::Options& opt = {});

// FullLine returns the closed form exp(-gamma t / hbar); HalfLine integrates.
double survival_probability(const ResonancePole& pole, Duration t, Domain domain, Units units = {},
                            const quad::Options& opt = {});

// Always by quadrature, for either domain.
double survival_probability_quadrature(const ResonancePole& pole, Duration t, Domain domain,
                                       Units units = {}, const quad::Options& opt = {});

} // namespace tadecay
