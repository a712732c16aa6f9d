#include <doctest.h>

#include "hodgeft/givental.hpp"
#include "hodgeft/series_ops.hpp"
#include "oracle_dvv.hpp"
#include "oracle_poly.hpp"
#include "testutil.hpp"

using namespace hodgeft;

namespace {

LogPotential point_potential(const TruncationWindow& w) {
    HodgeAlgebra triv = testutil::make_trivial();
    return tft_potential(triv, w);
}

} // namespace

TEST_CASE("correlator_get semantics") {
    TruncationWindow w{2, 5, 4};
    LogPotential p = point_potential(w);
    CHECK(p.correlator_get(0, Key{{0, 0}, {0, 0}, {0, 0}}) == Rat(1));
    CHECK(p.correlator_get(1, Key{{1, 0}}) == Rat(1, 24));
    // absent stable in-window key is exact zero
    CHECK(p.correlator_get(1, Key{{0, 0}}) == Rat(0));
    // unstable keys are an error, never zero
    CHECK_THROWS_AS(p.correlator_get(0, Key{{0, 0}, {0, 0}}), std::domain_error);
    CHECK_THROWS_AS(p.correlator_get(0, Key{}), std::domain_error);
    // beyond the window: zero only when forced by the 3g-2 property
    CHECK(p.correlator_get(0, Key{{5, 0}, {5, 0}, {5, 0}}) == Rat(0));
    Key big(6, Ins{0, 0});
    big.push_back(Ins{4, 0});
    CHECK_THROWS_AS(p.correlator_get(2, big), UnknownCoefficient); // n = 7 > n_max
    LogPotential q = p;
    q.has_3g2 = false;
    CHECK_THROWS_AS(q.correlator_get(0, Key{{5, 0}, {5, 0}, {5, 0}}), UnknownCoefficient);
}

TEST_CASE("serialization round trip and canonical form") {
    TruncationWindow w{1, 4, 2};
    LogPotential p = point_potential(w);
    std::string text = serialize_potential(p, {{"seed", "42"}});
    LogPotential q = parse_potential(text, "test");
    CHECK(q.corr == p.corr);
    CHECK(q.window.g_max == p.window.g_max);
    CHECK(q.window.n_max == p.window.n_max);
    CHECK(q.window.d_max == p.window.d_max);
    CHECK(q.has_3g2 == p.has_3g2);
    CHECK(q.basis_dim == p.basis_dim);
    CHECK(serialize_potential(q, {{"seed", "42"}}) == text);
    // golden shape of the body lines
    CHECK(text.find("0; (0,1)(0,1)(0,1); 1\n") != std::string::npos);
    CHECK(text.find("1; (1,1); 1/24\n") != std::string::npos);
    CHECK_THROWS_AS(parse_potential("0; zzz; 1\n", "bad"), std::invalid_argument);
    CHECK_THROWS_AS(parse_potential("0; (0,1); nope\n", "bad"), std::invalid_argument);
}

TEST_CASE("apply_first_order: Euler table scales by insertion count") {
    HodgeAlgebra alg = testutil::make_two_block();
    TruncationWindow w{1, 4, 2};
    LogPotential z = tft_potential(alg, w);
    std::vector<FirstOrderTerm> euler;
    for (int d = 0; d <= w.d_max; ++d)
        for (int i = 0; i < alg.dim(); ++i)
            euler.push_back({Ins{d, i}, Ins{d, i}, Rat(1)});
    LogPotential out = apply_first_order(z, alg.basis.parity, euler);
    for (const auto& [gk, v] : z.corr)
        CHECK(out.correlator_get(gk.first, gk.second) ==
              Rat(static_cast<long>(gk.second.size())) * v);
}

TEST_CASE("zero tables give the zero potential") {
    TruncationWindow w{1, 4, 2};
    LogPotential p = point_potential(w);
    CHECK(apply_first_order(p, ParityVec{0}, {}).corr.empty());
    CHECK(apply_second_order(p, ParityVec{0}, {}).corr.empty());
}

TEST_CASE("apply_first_order: descendant shift pulls the right correlator") {
    // table t_{0,1} d/dt_{1,1} on the point potential: the coefficient at
    // (g=1, {tau_0}) receives <tau_1>_1 = 1/24
    TruncationWindow w{1, 4, 2};
    LogPotential p = point_potential(w);
    std::vector<FirstOrderTerm> t{{Ins{0, 0}, Ins{1, 0}, Rat(1)}};
    LogPotential out = apply_first_order(p, ParityVec{0}, t);
    CHECK(out.correlator_get(1, Key{{0, 0}}) == Rat(1, 24));
}

TEST_CASE("first and second order ops match the literal expansion") {
    HodgeAlgebra alg = testutil::load_fixture("frobenius2.alg.json");
    const ParityVec& par = alg.basis.parity;
    TruncationWindow w{2, 6, 3};
    LogPotential z = tft_potential(alg, w);
    oracle::Poly zlog = oracle::from_log(z, w.n_max);
    oracle::Poly zfull = oracle::exp_poly(zlog, par, w.n_max);
    oracle::Poly zinv = oracle::exp_poly(oracle::scale(Rat(-1), zlog), par, w.n_max);
    const int n_cmp = 4, d_cmp = 2;
    auto filt = [&](const oracle::Poly& p) {
        oracle::Poly out;
        for (const auto& [hk, c] : p.terms) {
            if (static_cast<int>(hk.second.size()) > n_cmp)
                continue;
            bool ok = hk.first + 1 >= 0 && hk.first + 1 <= w.g_max;
            for (const Ins& x : hk.second)
                if (x.d > d_cmp)
                    ok = false;
            if (ok && !vanishing_key(hk.first + 1, hk.second, par, false,
                                     key_parity(hk.second, par)))
                out.add(hk.first, hk.second, c);
        }
        return out;
    };

    SUBCASE("first order with insertion") {
        std::vector<FirstOrderTerm> t{{Ins{0, 1}, Ins{1, 0}, Rat(3)}};
        LogPotential img = apply_first_order(z, par, t);
        oracle::Poly dz = oracle::derivative(zfull, Ins{1, 0}, par);
        oracle::Poly lit = oracle::scale(Rat(3), oracle::tmul(dz, Ins{0, 1}, par, w.n_max));
        oracle::Poly u = oracle::mul(lit, zinv, par, n_cmp);
        CHECK(filt(oracle::from_log(img, n_cmp)) == filt(u));
    }
    SUBCASE("second order") {
        std::vector<SecondOrderTerm> t{{Ins{0, 0}, Ins{0, 1}, Rat(2)}};
        LogPotential img = apply_second_order(z, par, t);
        oracle::Poly dd =
            oracle::derivative(oracle::derivative(zfull, Ins{0, 1}, par), Ins{0, 0}, par);
        oracle::Poly lit = oracle::hbar_shift(oracle::scale(Rat(2), dd), 1);
        oracle::Poly u = oracle::mul(lit, zinv, par, n_cmp);
        CHECK(filt(oracle::from_log(img, n_cmp)) == filt(u));
    }
}

TEST_CASE("second order splitting on the point: genus and splitting pieces") {
    // hbar d^2/dt_{0,1}^2 on the point potential; values frozen from the
    // literal-expansion oracle
    TruncationWindow w{1, 6, 3};
    LogPotential p = point_potential(w);
    ParityVec par{0};
    std::vector<SecondOrderTerm> t{{Ins{0, 0}, Ins{0, 0}, Rat(1)}};
    LogPotential out = apply_second_order(p, par, t);

    oracle::Poly plog = oracle::from_log(p, w.n_max);
    oracle::Poly pfull = oracle::exp_poly(plog, par, w.n_max);
    oracle::Poly pinv = oracle::exp_poly(oracle::scale(Rat(-1), plog), par, w.n_max);
    oracle::Poly dd = oracle::derivative(oracle::derivative(pfull, Ins{0, 0}, par),
                                         Ins{0, 0}, par);
    oracle::Poly u = oracle::mul(oracle::hbar_shift(dd, 1), pinv, par, 4);
    auto coeff = [&](int h, const Key& k) {
        auto it = u.terms.find({h, k});
        return it == u.terms.end() ? Rat(0) : it->second;
    };
    Key k3(3, Ins{0, 0});
    Key k4(4, Ins{0, 0});
    CHECK(out.correlator_get(1, k3) == coeff(0, k3) * mult_factorial(k3));
    CHECK(out.correlator_get(0, k4) == coeff(-1, k4) * mult_factorial(k4));
    // the splitting term contributes <tau_0^3>_0^2 over the three labeled
    // 2|2 splits of four points
    CHECK(out.correlator_get(0, k4) == Rat(3));
}

TEST_CASE("window restriction commutes with the operators") {
    HodgeAlgebra alg = testutil::load_fixture("frobenius2.alg.json");
    TruncationWindow big{2, 6, 3};
    TruncationWindow small{1, 4, 2};
    LogPotential zbig = tft_potential(alg, big);
    LogPotential zsmall = tft_potential(alg, small);
    std::vector<FirstOrderTerm> t{{Ins{0, 1}, Ins{1, 0}, Rat(1)}};
    LogPotential a = apply_first_order(zbig, alg.basis.parity, t);
    LogPotential b = apply_first_order(zsmall, alg.basis.parity, t);
    for (const auto& [gk, v] : b.corr)
        CHECK(a.correlator_get(gk.first, gk.second) == v);
    for (const auto& [gk, v] : a.corr)
        if (small.contains(gk.first, gk.second))
            CHECK(b.correlator_get(gk.first, gk.second) == v);
}

TEST_CASE("window overflow raises instead of silently truncating") {
    TruncationWindow w{0, 4, 1};
    HodgeAlgebra triv = testutil::make_trivial();
    LogPotential p = tft_potential(triv, w);
    p.has_3g2 = false; // without the vanishing guarantee the pull is unknown
    std::vector<FirstOrderTerm> t{{Ins{0, 0}, Ins{2, 0}, Rat(1)}};
    CHECK_THROWS_AS(apply_first_order(p, ParityVec{0}, t), UnknownCoefficient);
}
