// Copyright 2026 The qswitch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <numbers>

#include "support.hpp"

using namespace qswitch;
using namespace qswitch::testing;

namespace {

constexpr double kPi = std::numbers::pi;

SwitchSpec default_spec(Protocol protocol, std::size_t n, double lambda, double alpha) {
    return make_spec(protocol,
                     std::vector<UnitaryPair>(n, UnitaryPair(pauli(Axis::Z), ry(2.0 * lambda))),
                     std::vector<StateVector>(n, eta_state(alpha)));
}

} // namespace

TEST(Overlap, DefaultFamilyIsCosTwoLambda) {
    for (int k = 0; k <= 32; ++k) {
        const double lambda = kPi / 2 * k / 32;
        for (int a = 0; a <= 10; ++a) {
            const auto ov = overlap(UnitaryPair(pauli(Axis::Z), ry(2 * lambda)), eta_state(a / 10.0));
            EXPECT_NEAR(ov.real(), std::cos(2 * lambda), 1e-12);
            EXPECT_NEAR(ov.imag(), 0.0, 1e-12);
        }
    }
}

TEST(Overlap, InvariantUnderConjugationAndGatePhases) {
    Rng rng(31);
    for (int t = 0; t < 50; ++t) {
        const double lambda = rng.uniform(0, kPi / 2);
        const auto q = conjugated_family(rng, lambda);
        EXPECT_NEAR(std::abs(overlap(q.pair, q.input)), std::abs(std::cos(2 * lambda)), 1e-12);
    }
}

TEST(Condition, ReportFlags) {
    const auto good = check_max_entanglement(default_spec(Protocol::kGhz, 3, kPi / 4, 0.3));
    EXPECT_TRUE(good.all_orthogonal);
    EXPECT_FALSE(good.any_aligned);
    EXPECT_EQ(good.per_qubit_overlap.size(), 3u);

    const auto aligned = default_spec(Protocol::kGhz, 3, 0.0, 0.3);
    EXPECT_TRUE(check_max_entanglement(aligned).any_aligned);
    EXPECT_TRUE(check_separability(aligned));
    EXPECT_EQ(aligned_qubit(aligned), std::optional<std::size_t>(0));

    const auto middle = check_max_entanglement(default_spec(Protocol::kBell, 2, kPi / 8, 0.3));
    EXPECT_FALSE(middle.all_orthogonal);
    EXPECT_FALSE(middle.any_aligned);
}

TEST(Condition, RoundedQuarterTurnMissesStrictTolerance) {
    // ry(1.5708) leaves |overlap| ≈ 3.7e-6, above the 1e-9 default.
    const auto spec = make_spec(Protocol::kBell,
                                std::vector<UnitaryPair>(2, UnitaryPair(pauli(Axis::Z), ry(1.5708))),
                                std::vector<StateVector>(2, eta_state(0.5)));
    EXPECT_FALSE(check_max_entanglement(spec).all_orthogonal);
    EXPECT_TRUE(check_max_entanglement(spec, 1e-5).all_orthogonal);
}

TEST(CanonicalFrame, MapsReferenceStates) {
    Rng rng(32);
    for (int t = 0; t < 30; ++t) {
        const auto a = random_state(rng, 1);
        const auto b = random_state(rng, 1);
        const auto w = canonical_frame(a, b);
        EXPECT_TRUE(is_unitary(w, 1e-12));
        const auto wa = apply(w, a);
        EXPECT_NEAR(std::abs(wa[0]), 1.0, 1e-12);
        const auto wb = apply(w, b);
        EXPECT_NEAR(std::abs(wb[0]), std::abs(inner(a, b)), 1e-12);
    }
}

TEST(CanonicalLu, TakesOutcomesToGhz) {
    Rng rng(33);
    for (int t = 0; t < 20; ++t) {
        for (std::size_t n : {2u, 3u, 5u}) {
            const auto spec = spec_from_modes(rng, n == 2 ? Protocol::kBell : Protocol::kGhz,
                                              std::vector<Mode>(n, Mode::kOrthogonal));
            const auto lu = canonical_lu(spec);
            for (const auto &o : run(spec).outcomes) {
                ASSERT_TRUE(o.reachable());
                EXPECT_NEAR(ghz_fidelity(apply_local(lu, *o.state)), 1.0, 1e-10);
            }
        }
    }
}

TEST(CanonicalLu, TakesOutcomesToW) {
    Rng rng(34);
    for (int t = 0; t < 20; ++t) {
        const auto spec = spec_from_modes(rng, Protocol::kW, std::vector<Mode>(3, Mode::kOrthogonal));
        const auto lu = canonical_lu(spec);
        for (const auto &o : run(spec).outcomes) {
            EXPECT_NEAR(w_fidelity(apply_local(lu, *o.state)), 1.0, 1e-10) << o.label;
        }
    }
}

TEST(CanonicalLu, RefusesWhenConditionFails) {
    EXPECT_THROW(canonical_lu(default_spec(Protocol::kGhz, 3, kPi / 8, 0.5)), ValidationError);
}

TEST(Fidelity, PhaseAbsorbed) {
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(ghz_fidelity(StateVector({r, 0, 0, 0, 0, 0, 0, Complex(0, -r)})), 1.0, 1e-15);
    EXPECT_NEAR(ghz_fidelity(StateVector::basis(3, 0)), 0.5, 1e-15);
    const double s = 1.0 / std::sqrt(3.0);
    EXPECT_NEAR(w_fidelity(StateVector({0, s, -s, 0, Complex(0, s), 0, 0, 0})), 1.0, 1e-15);
}

TEST(ThreeTangle, MatchesHyperdeterminantOracle) {
    Rng rng(35);
    for (int t = 0; t < 100; ++t) {
        const auto psi = random_state(rng, 3);
        EXPECT_NEAR(three_tangle(psi), tangle_ref(amplitudes(psi)), 1e-12);
    }
}

TEST(ThreeTangle, ReferenceValues) {
    const double r = 1.0 / std::sqrt(2.0);
    const double s = 1.0 / std::sqrt(3.0);
    EXPECT_NEAR(three_tangle(StateVector({r, 0, 0, 0, 0, 0, 0, r})), 1.0, 1e-14);
    EXPECT_NEAR(three_tangle(StateVector({0, s, s, 0, s, 0, 0, 0})), 0.0, 1e-14);
}

TEST(Classify, SwitchOutcomes) {
    for (const auto &o : run(default_spec(Protocol::kGhz, 3, kPi / 4, 0.6)).outcomes) {
        EXPECT_EQ(certify_class(*o.state), StateClass::kGhzClass);
    }
    for (const auto &o : run(default_spec(Protocol::kW, 3, kPi / 4, 0.6)).outcomes) {
        EXPECT_EQ(certify_class(*o.state), StateClass::kWClass);
    }
    for (const auto &o : run(default_spec(Protocol::kW, 3, kPi / 2, 0.6)).outcomes) {
        EXPECT_EQ(certify_class(*o.state), StateClass::kSeparable) << o.label;
    }
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_EQ(certify_class(kron(StateVector({r, 0, 0, r}), StateVector::basis(1, 0))),
              StateClass::kBiseparable);
    EXPECT_THROW(certify_class(StateVector::basis(2, 0)), DimensionError);
}

TEST(Condition, EquivalentToMaximalOutputsOnRandomSpecs) {
    Rng rng(36);
    for (int t = 0; t < 40; ++t) {
        const auto spec = spec_from_modes(rng, Protocol::kGhz, random_modes(rng, 3, false));
        bool all_max = true;
        for (const auto &o : run(spec).outcomes) {
            if (o.reachable() && std::abs(gme_concurrence(*o.state).value - 1.0) > kMetricTol) {
                all_max = false;
            }
        }
        EXPECT_EQ(check_max_entanglement(spec).all_orthogonal, all_max);
    }
}
