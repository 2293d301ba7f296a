#include "logposit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace logposit {

void SweepSpec::validate() const {
    if (sampling == Sampling::exhaustive && format.n_bits > 8) {
        throw std::invalid_argument("exhaustive sweeps are only supported for 8-bit formats");
    }
    if (sampling == Sampling::random && sample_count == 0) {
        throw std::invalid_argument("random sweep needs a sample count");
    }
}

std::string distribution_name(OperandDistribution d) {
    return d == OperandDistribution::uniform_bits ? "uniform-bits" : "gaussian-values";
}

OperandDistribution parse_distribution(const std::string& name) {
    if (name == "uniform-bits") {
        return OperandDistribution::uniform_bits;
    }
    if (name == "gaussian-values") {
        return OperandDistribution::gaussian_values;
    }
    throw std::invalid_argument("bad operand distribution: " + name);
}

PairErrorRecord evaluate_pair(const PositFormat& format, const MultiplierConfig& cfg,
                              PositBits a, PositBits b) {
    PairErrorRecord rec;
    const ExactValue va = to_exact(format, a);
    const ExactValue vb = to_exact(format, b);
    if (va.is_nar() || vb.is_nar()) {
        rec.excluded = true;
        rec.exact_bits = rec.approx_bits = PositBits{format.nar_pattern()};
        return rec;
    }

    rec.exact_bits = encode(format, va * vb);
    const ExactValue exact_real = to_exact(format, rec.exact_bits);

    const ScaledProduct p = multiply_stage(format, cfg, a, b);
    Quire q;
    if (p.special != ScaledProduct::Special::nar) {
        q = accumulate(q, p);
    }
    rec.approx_bits = finalize(q, format);
    const ExactValue approx_real = to_exact(format, rec.approx_bits);

    rec.exact_real = exact_real.to_double();
    rec.approx_real = approx_real.to_double();
    if (exact_real.is_zero()) {
        rec.excluded = true;
        return rec;
    }
    const ExactValue ed = (exact_real - approx_real).abs();
    rec.error_distance = ed.to_double();
    rec.relative_error = rec.error_distance / std::abs(rec.exact_real);
    return rec;
}

namespace {

struct SweepPartial {
    double sum_ed = 0.0;
    double sum_ed2 = 0.0;
    double sum_re = 0.0;
    double max_re = 0.0;
    double max_abs_exact = 0.0;
    std::uint64_t evaluated = 0;
    std::uint64_t excluded = 0;
};

PositBits draw_operand(const SweepSpec& spec, SeededRng& rng) {
    if (spec.distribution == OperandDistribution::gaussian_values) {
        return encode(spec.format, ExactValue::from_double(rng.next_gaussian()));
    }
    return PositBits{rng.next_bits(spec.format.n_bits)};
}

}  // namespace

ErrorReport run_sweep(const SweepSpec& spec, int threads) {
    spec.validate();

    std::uint64_t total;
    std::vector<std::pair<PositBits, PositBits>> drawn;
    if (spec.sampling == Sampling::exhaustive) {
        const std::uint64_t patterns = std::uint64_t{1} << spec.format.n_bits;
        total = patterns * patterns;
    } else {
        total = spec.sample_count;
        drawn.reserve(total);
        SeededRng rng(spec.seed);
        for (std::uint64_t i = 0; i < total; ++i) {
            auto a = draw_operand(spec, rng);
            auto b = draw_operand(spec, rng);
            drawn.emplace_back(a, b);
        }
    }

    auto pair_at = [&](std::uint64_t i) -> std::pair<PositBits, PositBits> {
        if (spec.sampling == Sampling::exhaustive) {
            const std::uint64_t patterns = std::uint64_t{1} << spec.format.n_bits;
            return {PositBits{static_cast<std::uint32_t>(i / patterns)},
                    PositBits{static_cast<std::uint32_t>(i % patterns)}};
        }
        return drawn[i];
    };

    auto map = [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        SweepPartial part;
        for (std::uint64_t i = begin; i < end; ++i) {
            const auto [a, b] = pair_at(i);
            const PairErrorRecord rec = evaluate_pair(spec.format, spec.cfg, a, b);
            if (rec.excluded) {
                ++part.excluded;
                continue;
            }
            ++part.evaluated;
            part.sum_ed += rec.error_distance;
            part.sum_ed2 += rec.error_distance * rec.error_distance;
            part.sum_re += *rec.relative_error;
            part.max_re = std::max(part.max_re, *rec.relative_error);
            part.max_abs_exact = std::max(part.max_abs_exact, std::abs(rec.exact_real));
        }
        return part;
    };
    auto reduce = [](SweepPartial& acc, const SweepPartial& p) {
        acc.sum_ed += p.sum_ed;
        acc.sum_ed2 += p.sum_ed2;
        acc.sum_re += p.sum_re;
        acc.max_re = std::max(acc.max_re, p.max_re);
        acc.max_abs_exact = std::max(acc.max_abs_exact, p.max_abs_exact);
        acc.evaluated += p.evaluated;
        acc.excluded += p.excluded;
    };

    const SweepPartial agg = blocked_reduce<SweepPartial>(total, map, reduce, threads);

    ErrorReport report;
    report.spec = spec;
    report.pairs_evaluated = agg.evaluated;
    report.pairs_excluded = agg.excluded;
    if (agg.evaluated > 0) {
        const auto n = static_cast<double>(agg.evaluated);
        report.mse = agg.sum_ed2 / n;
        report.mae = agg.sum_ed / n;
        report.nmed = agg.max_abs_exact > 0.0 ? (agg.sum_ed / n) / agg.max_abs_exact : 0.0;
        report.mred = agg.sum_re / n;
        report.max_re = agg.max_re;
    }
    return report;
}

}  // namespace logposit
