#include "ncg/cocycle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ncg {

namespace {

cplx unit_phase(const Rational& turns) {
    // exp(2 pi i turns), with the fraction reduced mod 1 first so large
    // numerators cost no accuracy.
    Rational t = turns - Rational(numerator(turns) / denominator(turns));
    double x = 2.0 * std::numbers::pi * to_double(t);
    return {std::cos(x), std::sin(x)};
}

}  // namespace

Cocycle Cocycle::trivial() { return Cocycle(); }

Cocycle Cocycle::solenoid_bicharacter(std::vector<std::vector<Rational>> theta) {
    for (size_t i = 0; i < theta.size(); ++i)
        for (size_t j = 0; j < theta.size(); ++j)
            if (theta[i][j] != -theta[j][i])
                throw std::invalid_argument("solenoid_bicharacter: form must be skew-symmetric");
    auto eval = [theta = std::move(theta)](const Group& g, const GroupElement& a,
                                           const GroupElement& b) -> cplx {
        std::vector<Rational> x = solenoid_coords(g, a), y = solenoid_coords(g, b);
        Rational t = 0;
        for (size_t i = 0; i < x.size(); ++i)
            for (size_t j = 0; j < y.size(); ++j) t += x[i] * theta[i][j] * y[j];
        return unit_phase(t);
    };
    return Cocycle("solenoid-bicharacter", std::move(eval));
}

Cocycle Cocycle::bunce_deddens() {
    auto eval = [](const Group& g, const GroupElement& a, const GroupElement& b) -> cplx {
        // eta^z with eta the root part of b and z the integer part of a
        Rational t = bd_turn(g, b) * Rational(a.bd.z);
        return unit_phase(t);
    };
    return Cocycle("bunce-deddens", std::move(eval));
}

Cocycle Cocycle::finite_bicharacter(int q) {
    auto eval = [q](const Group& g, const GroupElement& a, const GroupElement& b) -> cplx {
        if (g.rank < 2) return {1.0, 0.0};
        Rational t = Rational(q * a.fin.coords[0] * b.fin.coords[1], g.finite_modulus);
        return unit_phase(t);
    };
    return Cocycle("finite-bicharacter", std::move(eval));
}

Cocycle::ValidationReport Cocycle::validate(const Group& g,
                                            const std::vector<GroupElement>& sample,
                                            std::mt19937& rng, int trials, double tol,
                                            bool check_inverse_condition) const {
    if (sample.empty()) throw std::invalid_argument("cocycle validation needs a sample set");
    ValidationReport rep;
    std::uniform_int_distribution<size_t> pick(0, sample.size() - 1);
    GroupElement e = identity(g);
    for (int t = 0; t < trials; ++t) {
        const GroupElement& a = sample[pick(rng)];
        const GroupElement& b = sample[pick(rng)];
        const GroupElement& c = sample[pick(rng)];
        cplx lhs = (*this)(g, a, b) * (*this)(g, add(g, a, b), c);
        cplx rhs = (*this)(g, a, add(g, b, c)) * (*this)(g, b, c);
        rep.max_identity_residual = std::max(rep.max_identity_residual, std::abs(lhs - rhs));
        rep.max_normalization_residual =
            std::max({rep.max_normalization_residual, std::abs((*this)(g, a, e) - cplx(1.0)),
                      std::abs((*this)(g, e, a) - cplx(1.0))});
        rep.max_modulus_residual =
            std::max(rep.max_modulus_residual, std::abs(std::abs((*this)(g, a, b)) - 1.0));
        if (check_inverse_condition)
            rep.max_inverse_residual = std::max(
                rep.max_inverse_residual, std::abs((*this)(g, a, inverse(g, a)) - cplx(1.0)));
    }
    rep.ok = rep.max_identity_residual <= tol && rep.max_normalization_residual <= tol &&
             rep.max_modulus_residual <= tol &&
             (!check_inverse_condition || rep.max_inverse_residual <= tol);
    if (!rep.ok) {
        std::ostringstream os;
        os << "cocycle '" << name_ << "' failed validation: identity residual "
           << rep.max_identity_residual << ", normalization " << rep.max_normalization_residual;
        throw std::runtime_error(os.str());
    }
    return rep;
}

}  // namespace ncg
