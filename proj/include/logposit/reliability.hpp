#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logposit/formats.hpp"
#include "logposit/sampling.hpp"

namespace logposit {

enum class BitFieldFilter { all, sign, regime, exponent, fraction };

// What to do with injections whose clean or faulty value has no finite
// log-magnitude (zero or NaR): drop them (default) or count them with zero
// distortion as a conservative lower bound. Operands that are themselves
// zero/NaR are always dropped.
enum class SpecialFaultPolicy { exclude, zero_distortion };

struct FaultSpec {
    PositFormat format;
    Sampling sampling = Sampling::exhaustive;
    std::uint64_t sample_count = 0;  // operands drawn when sampling == random
    std::uint64_t seed = 0;
    BitFieldFilter fields = BitFieldFilter::all;
    SpecialFaultPolicy policy = SpecialFaultPolicy::exclude;

    void validate() const;
};

struct FaultReport {
    double eta = 0.0;            // E[ |log2|x_o| - log2|x_f|| ]
    double regime_term = 0.0;    // 2^es * E[|k_o - k_f|]
    double exponent_term = 0.0;  // E[|e_o - e_f|]
    double fraction_term = 0.0;  // E[|log2 m_o - log2 m_f|], reported for the decomposition gap
    std::uint64_t samples = 0;   // included injections
    std::uint64_t excluded = 0;
    std::optional<double> gamma;  // filled by paired runs
    FaultSpec spec;
};

// Pure single-bit flip of the stored word; position counts from the LSB.
// Throws std::out_of_range when position is outside [0, n_bits).
PositBits inject(const PositFormat& format, PositBits bits, int position);

// Bit positions of the word belonging to one field class. Fields of a
// negative word are those of its two's-complement magnitude; zero/NaR have
// no field decomposition and yield an empty list for everything but `sign`.
std::vector<int> field_positions(const PositFormat& format, PositBits bits, BitFieldFilter field);

// Empirical expected catastrophic error. Faults act on the sign-magnitude
// field encoding: the sign position negates the value, any other position
// flips that bit of the magnitude word, which is re-decoded as a positive
// pattern (the field-level model behind the regime/exponent decomposition).
FaultReport ece_empirical(const FaultSpec& spec, int threads = 0);

// eta_standard / eta_bounded. Requires reports over the same word length,
// es, sampling and field restriction; throws on a zero bounded eta.
double improvement_factor(const FaultReport& standard_run, const FaultReport& bounded_run);

std::string field_filter_name(BitFieldFilter f);
BitFieldFilter parse_field_filter(const std::string& name);
std::string fault_policy_name(SpecialFaultPolicy p);
SpecialFaultPolicy parse_fault_policy(const std::string& name);

}  // namespace logposit
