#include "doctest.h"

#include <nlohmann/json.hpp>

#include "logposit/reliability.hpp"
#include "logposit/report_io.hpp"

#include <cmath>

using namespace logposit;

namespace {

const PositFormat kP8 = PositFormat::standard(8);

FaultSpec exhaustive_spec(const PositFormat& f, BitFieldFilter fields = BitFieldFilter::all) {
    FaultSpec spec;
    spec.format = f;
    spec.sampling = Sampling::exhaustive;
    spec.fields = fields;
    return spec;
}

}  // namespace

TEST_CASE("inject is a pure involutive bit flip") {
    for (std::uint32_t p = 0; p < 256; ++p) {
        for (int pos = 0; pos < 8; ++pos) {
            const PositBits once = inject(kP8, PositBits{p}, pos);
            CHECK(once.raw != p);
            CHECK(inject(kP8, once, pos).raw == p);
        }
    }
    CHECK(inject(kP8, PositBits{0}, 0).raw == kP8.minpos_pattern());
    CHECK(inject(kP8, PositBits{0x40}, 7).raw == 0xc0);
    CHECK_THROWS_AS(inject(kP8, PositBits{0}, 8), std::out_of_range);
    CHECK_THROWS_AS(inject(kP8, PositBits{0}, -1), std::out_of_range);
}

TEST_CASE("field position map") {
    // 0x48 = sign | regime "10" | fraction 01000 (no exponent field at es=0).
    const PositBits bits{0x48};
    CHECK(field_positions(kP8, bits, BitFieldFilter::sign) == std::vector<int>{7});
    CHECK(field_positions(kP8, bits, BitFieldFilter::regime) == std::vector<int>{5, 6});
    CHECK(field_positions(kP8, bits, BitFieldFilter::exponent).empty());
    CHECK(field_positions(kP8, bits, BitFieldFilter::fraction) == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(field_positions(kP8, bits, BitFieldFilter::all).size() == 8);

    const PositFormat p16 = PositFormat::standard(16);
    const PositBits one16{0x4000};  // regime "10", exponent 1 bit, fraction 12 bits
    CHECK(field_positions(p16, one16, BitFieldFilter::exponent) == std::vector<int>{12});
    CHECK(field_positions(p16, one16, BitFieldFilter::regime) == std::vector<int>{13, 14});

    CHECK(field_positions(kP8, PositBits{0}, BitFieldFilter::regime).empty());
}

TEST_CASE("sign-restricted eta is exactly zero") {
    const FaultReport r = ece_empirical(exhaustive_spec(kP8, BitFieldFilter::sign), 1);
    CHECK(r.eta == 0.0);
    CHECK(r.regime_term == 0.0);
    CHECK(r.exponent_term == 0.0);
    // All patterns except zero and NaR contribute one sign injection each.
    CHECK(r.samples == 254);
    CHECK(r.excluded == 2);
}

TEST_CASE("fraction flips keep the distortion below one octave") {
    const FaultReport r = ece_empirical(exhaustive_spec(kP8, BitFieldFilter::fraction), 1);
    CHECK(r.eta > 0.0);
    CHECK(r.eta < 1.0);
    CHECK(r.regime_term == 0.0);
    CHECK(r.exponent_term == 0.0);

    // Per-injection bound: a fraction flip moves log2(1+f/2^w) within (0,1).
    for (std::uint32_t p = 1; p < 0x80; ++p) {
        const DecodedPosit d = decode(kP8, PositBits{p});
        for (int pos : field_positions(kP8, PositBits{p}, BitFieldFilter::fraction)) {
            const DecodedPosit df = decode(kP8, PositBits{p ^ (1u << pos)});
            const double delta = std::abs(to_exact(kP8, PositBits{p}).log2_abs() -
                                          to_exact(kP8, PositBits{p ^ (1u << pos)}).log2_abs());
            CHECK(delta < 1.0);
            CHECK(d.k == df.k);
        }
    }
}

TEST_CASE("eta grows with the regime bound and tops out at standard") {
    double prev = 0.0;
    for (int bound = 1; bound <= 6; ++bound) {
        const double eta = ece_empirical(exhaustive_spec(PositFormat::bounded(8, bound)), 1).eta;
        CAPTURE(bound);
        CHECK(eta >= prev);
        prev = eta;
    }
    const double eta_std = ece_empirical(exhaustive_spec(kP8), 1).eta;
    CHECK(eta_std >= prev);
    const double eta_b2 = ece_empirical(exhaustive_spec(PositFormat::bounded(8, 2)), 1).eta;
    CHECK(eta_b2 < eta_std);
}

TEST_CASE("decomposition: triangle bound and regime dominance") {
    const FaultReport all = ece_empirical(exhaustive_spec(kP8), 1);
    CHECK(all.eta <= all.regime_term + all.exponent_term + all.fraction_term + 1e-12);

    const FaultReport regime = ece_empirical(exhaustive_spec(kP8, BitFieldFilter::regime), 1);
    CHECK(regime.regime_term / regime.eta > 0.9);
}

TEST_CASE("improvement factor") {
    const FaultReport std_run = ece_empirical(exhaustive_spec(kP8), 1);
    const FaultReport b2_run = ece_empirical(exhaustive_spec(PositFormat::bounded(8, 2)), 1);
    CHECK(improvement_factor(std_run, std_run) == 1.0);
    CHECK(improvement_factor(std_run, b2_run) > 1.0);

    // gamma is non-increasing in the regime bound.
    double prev = improvement_factor(std_run, ece_empirical(exhaustive_spec(PositFormat::bounded(8, 1)), 1));
    for (int bound = 2; bound <= 6; ++bound) {
        const double gamma =
            improvement_factor(std_run, ece_empirical(exhaustive_spec(PositFormat::bounded(8, bound)), 1));
        CHECK(gamma <= prev);
        prev = gamma;
    }

    FaultSpec mismatched = exhaustive_spec(kP8, BitFieldFilter::regime);
    const FaultReport other = ece_empirical(mismatched, 1);
    CHECK_THROWS_AS(improvement_factor(std_run, other), std::invalid_argument);

    const FaultReport sign_run = ece_empirical(exhaustive_spec(kP8, BitFieldFilter::sign), 1);
    CHECK_THROWS_AS(improvement_factor(sign_run, sign_run), std::invalid_argument);
}

TEST_CASE("special-fault policies") {
    FaultSpec spec = exhaustive_spec(kP8);
    const FaultReport drop = ece_empirical(spec, 1);
    // zero operand (8), NaR operand (8), plus one flip into zero for each of
    // the 14 patterns whose magnitude is a single bit.
    CHECK(drop.excluded == 30);
    CHECK(drop.samples == 2048 - 30);

    spec.policy = SpecialFaultPolicy::zero_distortion;
    const FaultReport keep = ece_empirical(spec, 1);
    CHECK(keep.excluded == 16);  // only the zero/NaR operands stay excluded
    CHECK(keep.samples == 2048 - 16);
    CHECK(keep.eta <= drop.eta);
}

TEST_CASE("random fault sweeps are deterministic across thread counts") {
    FaultSpec spec;
    spec.format = PositFormat::standard(16);
    spec.sampling = Sampling::random;
    spec.sample_count = 4000;
    spec.seed = 5;
    const std::string a = to_json(ece_empirical(spec, 1)).dump();
    CHECK(a == to_json(ece_empirical(spec, 3)).dump());
    CHECK(a == to_json(ece_empirical(spec, 0)).dump());
}

TEST_CASE("fault report serialization round-trips") {
    FaultSpec spec = exhaustive_spec(PositFormat::bounded(8, 2), BitFieldFilter::regime);
    FaultReport r = ece_empirical(spec, 1);
    r.gamma = 1.5;
    const nlohmann::json j = to_json(r);
    const FaultReport back = fault_report_from_json(j);
    CHECK(to_json(back).dump() == j.dump());
    CHECK(back.spec.fields == BitFieldFilter::regime);
    CHECK(back.gamma == 1.5);

    const std::string csv = to_csv(r);
    CHECK(csv.find("eta,") != std::string::npos);
    CHECK(csv.find("gamma,1.5,ratio") != std::string::npos);
}
