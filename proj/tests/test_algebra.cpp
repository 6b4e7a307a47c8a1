#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ncg/rep.hpp"
#include "ncg/opnorm.hpp"

using namespace ncg;

namespace {

std::mt19937 rng(2024);

std::vector<GroupElement> sample_sol(const Group& g, int count, unsigned max_level, int range) {
    std::uniform_int_distribution<int> lvl(0, static_cast<int>(max_level));
    std::uniform_int_distribution<int> num(-range, range);
    std::vector<GroupElement> out;
    for (int i = 0; i < count; ++i) {
        std::vector<BigInt> a(g.rank);
        for (auto& x : a) x = num(rng);
        out.push_back(make_solenoid_element_raw(g, a, static_cast<unsigned>(lvl(rng))));
    }
    return out;
}

AlgebraElement random_element(const Group& g, const Ball& ball, int support, unsigned seed) {
    std::mt19937 r(seed);
    std::uniform_int_distribution<int> pick(0, ball.size() - 1);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    AlgebraElement f(g);
    for (int i = 0; i < support; ++i)
        f.add_term(ball.elems[pick(r)], cplx(coef(r), coef(r)));
    return f;
}

}  // namespace

TEST_CASE("cocycle presets satisfy the 2-cocycle identity") {
    Group g = Group::solenoid(2, 2);
    auto sample = sample_sol(g, 60, 3, 20);
    Cocycle triv = Cocycle::trivial();
    triv.validate(g, sample, rng, 1000);

    Cocycle bic = Cocycle::solenoid_bicharacter(
        {{Rational(0), Rational(1, 3)}, {Rational(-1, 3), Rational(0)}});
    auto rep = bic.validate(g, sample, rng, 1000, 1e-9, true);
    CHECK(rep.max_identity_residual <= 1e-10);
    CHECK(rep.max_inverse_residual <= 1e-12);

    CHECK_THROWS(Cocycle::solenoid_bicharacter(
        {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}));

    Group bd = Group::bunce_deddens({2, 4, 8});
    std::vector<GroupElement> bds;
    std::uniform_int_distribution<int> res(0, 7), z(-5, 5);
    for (int i = 0; i < 60; ++i) bds.push_back(make_bd_element(bd, res(rng), 2, z(rng)));
    Cocycle::bunce_deddens().validate(bd, bds, rng, 1000);
}

TEST_CASE("lambda matrix structure") {
    Group g = Group::solenoid(2, 1);
    Ball b = enumerate_ball(g, default_length(g, Combinator::Max), 2);
    Cocycle sigma = Cocycle::trivial();

    SpCMat id = lambda_matrix(sigma, identity(g), b);
    CHECK(dense(id).isApprox(CMat::Identity(b.size(), b.size())));

    // shift far enough that gB does not meet B
    GroupElement far = make_solenoid_element(g, {Rational(100)});
    CHECK(lambda_matrix(sigma, far, b).nonZeros() == 0);

    GroupElement one = make_solenoid_element(g, {Rational(1)});
    SpCMat lm = lambda_matrix(sigma, one, b);
    CMat m = dense(lm);
    for (int j = 0; j < m.cols(); ++j) {
        int nnz = 0;
        for (int i = 0; i < m.rows(); ++i)
            if (std::abs(m(i, j)) > 0) {
                ++nnz;
                CHECK(std::abs(std::abs(m(i, j)) - 1.0) <= 1e-15);
            }
        CHECK(nnz <= 1);
    }
}

TEST_CASE("rho matrix: identity, commutation with lambda, unitarity pattern") {
    Group g = Group::solenoid(2, 1);
    LengthFunction L = default_length(g, Combinator::Max);
    Ball big = enumerate_ball(g, L, 8);
    Cocycle sigma = Cocycle::trivial();

    CHECK(dense(rho_matrix(sigma, identity(g), big))
              .isApprox(CMat::Identity(big.size(), big.size())));

    // commutation on an inner ball: P_B' (lambda(g) rho(k) - rho(k) lambda(g)) P_B'
    Ball inner = enumerate_ball(g, L, 2);
    GroupElement gg = make_solenoid_element(g, {Rational(1)});
    GroupElement kk = make_solenoid_element(g, {Rational(1, 2)});
    CMat lam = dense(lambda_matrix(sigma, gg, big));
    CMat rho = dense(rho_matrix(sigma, kk, big));
    CMat comm = lam * rho - rho * lam;
    // restrict to the columns/rows of the inner ball
    for (const GroupElement& x : inner.elems) {
        int j = big.index_of(x);
        for (const GroupElement& y : inner.elems) {
            int i = big.index_of(y);
            CHECK(std::abs(comm(i, j)) <= 1e-14);
        }
    }

    // BD cocycle: nontrivial phases, same commutation
    Group bd = Group::bunce_deddens({2, 4});
    LengthFunction Lb = default_length(bd, Combinator::Max);
    Ball bigb = enumerate_ball(bd, Lb, 6);
    Ball innerb = enumerate_ball(bd, Lb, 2);
    Cocycle sb = Cocycle::bunce_deddens();
    GroupElement gb = make_bd_element(bd, 1, 1, 0);
    GroupElement kb = make_bd_element(bd, 0, 0, 1);
    CMat lamb = dense(lambda_matrix(sb, gb, bigb));
    CMat rhob = dense(rho_matrix(sb, kb, bigb));
    CMat commb = lamb * rhob - rhob * lamb;
    for (const GroupElement& x : innerb.elems) {
        int j = bigb.index_of(x);
        for (const GroupElement& y : innerb.elems) {
            int i = bigb.index_of(y);
            CHECK(std::abs(commb(i, j)) <= 1e-13);
        }
    }
}

TEST_CASE("lambda_of: delta, l1 bound, adjoint identity") {
    Group g = Group::solenoid(2, 1);
    Ball b = enumerate_ball(g, default_length(g, Combinator::Max), 4);
    Cocycle sigma = Cocycle::trivial();

    CHECK(dense(lambda_of(sigma, AlgebraElement::delta(g, identity(g)), b))
              .isApprox(CMat::Identity(b.size(), b.size())));

    for (unsigned seed = 0; seed < 8; ++seed) {
        AlgebraElement f = random_element(g, b, 4, seed);
        SpCMat m = lambda_of(sigma, f, b);
        CHECK(op_norm(m).value <= f.ell1() + 1e-9);
        // lambda(f^*) equals lambda(f)^* on the compression
        AlgebraElement fs = involution(sigma, f);
        CHECK(dense(lambda_of(sigma, fs, b)).isApprox(dense(m).adjoint(), 1e-12));
    }
}

TEST_CASE("twisted convolution") {
    Group g = Group::bunce_deddens({2, 4});
    Cocycle sigma = Cocycle::bunce_deddens();
    LengthFunction L = default_length(g, Combinator::Max);
    Ball inner = enumerate_ball(g, L, 2);

    GroupElement x = make_bd_element(g, 1, 1, 1);
    GroupElement y = make_bd_element(g, 1, 0, -1);
    AlgebraElement dx = AlgebraElement::delta(g, x);
    AlgebraElement dy = AlgebraElement::delta(g, y);

    // f * delta_identity = f
    AlgebraElement f = dx + dy * cplx(0.5, -0.25);
    AlgebraElement fid = twisted_convolution(sigma, f, AlgebraElement::delta(g, identity(g)));
    CHECK(fid.terms().size() == f.terms().size());
    for (const auto& [e, c] : f.terms()) CHECK(std::abs(fid.at(e) - c) <= 1e-15);

    // delta_g * delta_h = sigma(g,h) delta_{gh}
    AlgebraElement prod = twisted_convolution(sigma, dx, dy);
    REQUIRE(prod.terms().size() == 1);
    CHECK(std::abs(prod.at(add(g, x, y)) - sigma(g, x, y)) <= 1e-15);

    // padded-truncation matrix equality: lambda(f1*f2) = lambda(f1) lambda(f2)
    // on the inner ball, computed in a padded ball (direct product oracle)
    Ball pad = enumerate_ball(g, L, 8);
    for (unsigned seed = 0; seed < 6; ++seed) {
        AlgebraElement f1 = random_element(g, inner, 3, 100 + seed);
        AlgebraElement f2 = random_element(g, inner, 3, 200 + seed);
        CMat lhs = dense(lambda_of(sigma, twisted_convolution(sigma, f1, f2), pad));
        CMat rhs = dense(lambda_of(sigma, f1, pad)) * dense(lambda_of(sigma, f2, pad));
        // agreement on the inner compression (padding contract)
        for (const GroupElement& a : inner.elems)
            for (const GroupElement& bb : inner.elems) {
                int i = pad.index_of(a), j = pad.index_of(bb);
                CHECK(std::abs(lhs(i, j) - rhs(i, j)) <= 1e-12);
            }
    }
}

TEST_CASE("trace equals the delta_1 matrix element") {
    Group g = Group::solenoid(3, 1);
    Cocycle sigma = Cocycle::trivial();
    Ball b = enumerate_ball(g, default_length(g, Combinator::Max), 3);
    CHECK(trace(AlgebraElement::delta(g, identity(g))) == cplx(1.0));
    CHECK(trace(AlgebraElement::delta(g, make_solenoid_element(g, {Rational(1)}))) == cplx(0.0));
    int e = b.index_of(identity(g));
    for (unsigned seed = 0; seed < 8; ++seed) {
        AlgebraElement f = random_element(g, b, 5, 300 + seed);
        CMat m = dense(lambda_of(sigma, f, b));
        CHECK(std::abs(trace(f) - m(e, e)) <= 1e-14);
    }
}

TEST_CASE("fejer averaging: kernel properties and convergence") {
    Group g = Group::solenoid(2, 1);
    Ball b = enumerate_ball(g, default_length(g, Combinator::Max), 4);
    Cocycle sigma = Cocycle::trivial();

    AlgebraElement did = AlgebraElement::delta(g, identity(g));
    AlgebraElement fid = fejer_average(did, 3);
    CHECK(std::abs(fid.at(identity(g)) - cplx(1.0)) <= 1e-15);

    AlgebraElement f = random_element(g, b, 6, 42);
    unsigned lvl = 0;
    for (const auto& [x, c] : f.terms()) lvl = std::max(lvl, level(g, x));
    double prev_l1 = 1e300;
    size_t prev_support = 0;
    for (unsigned k = 1; k <= (1u << 20); k *= 4) {
        double wprev = -1;
        for (const auto& [x, c] : f.terms()) {
            double w = fejer_coefficient(g, x, k, lvl);
            CHECK(w >= 0.0);
            CHECK(w <= 1.0);
            CHECK(w == doctest::Approx(fejer_coefficient(g, inverse(g, x), k, lvl)));
            CHECK(w >= fejer_coefficient(g, x, std::max(1u, k / 4), lvl) - 1e-15);
            (void)wprev;
        }
        AlgebraElement fk = fejer_average(f, k);
        CHECK(fk.support_size() >= prev_support);  // support grows with k
        prev_support = fk.support_size();
        double l1 = (fk - f).ell1();
        CHECK(l1 <= prev_l1 + 1e-12);  // pointwise increasing kernel
        prev_l1 = l1;
        CHECK(op_norm(lambda_of(sigma, fk - f, b)).value <= l1 + 1e-12);
    }
    CHECK(prev_l1 <= 1e-4 * std::max(1.0, f.ell1()));  // k -> infinity recovers f

    // BD family: root factor reproduced exactly, integer factor damped
    Group bd = Group::bunce_deddens({2, 4});
    GroupElement root = make_bd_element(bd, 1, 1, 0);
    CHECK(fejer_coefficient(bd, root, 1, 1) == 1.0);
    GroupElement withz = make_bd_element(bd, 1, 1, 3);
    CHECK(fejer_coefficient(bd, withz, 2, 1) == 0.0);
    CHECK(fejer_coefficient(bd, withz, 6, 1) == doctest::Approx(0.5));
}
