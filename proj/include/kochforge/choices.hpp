#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kochforge/ifs.hpp"

namespace kochforge {

/// Orientation choices for one curve: level k holds one bit per level-k
/// segment (4^k slots). Slot i of level k lives at byte i/8, bit i%8 of the
/// packed array; padding bits past 4^k are always zero. Bit 0 bumps the
/// segment's replacement to the upper side (in base-curve coordinates),
/// bit 1 to the lower side.
struct ChoiceSequence {
    std::vector<std::vector<std::uint8_t>> levels;

    int depth() const { return static_cast<int>(levels.size()); }
    static std::uint64_t level_size(int k) { return std::uint64_t{1} << (2 * k); }

    int get(int k, std::uint64_t i) const {
        return (levels[k][i >> 3] >> (i & 7)) & 1;
    }
    void set(int k, std::uint64_t i, int bit) {
        std::uint8_t mask = static_cast<std::uint8_t>(1u << (i & 7));
        if (bit) levels[k][i >> 3] |= mask;
        else levels[k][i >> 3] &= static_cast<std::uint8_t>(~mask);
    }

    /// Number of zero slots at level k (padding excluded).
    std::uint64_t zeros_at_level(int k) const;

    /// Lowercase hex, one digit per four slots, low-order slot in the low bit:
    /// digit j has value sum of slot(4j+m) * 2^m. Length ceil(4^k / 4).
    std::string level_hex(int k) const;
};

/// Largest supported depth; level depth-1 then stores 4^(depth-1) bits.
inline constexpr int kMaxDepth = 14;

/// All slots equal to bit.
ChoiceSequence uniform_sequence(int depth, int bit);

/// Deterministic pseudo-random slots: slot (k, i) of the sequence tagged tag
/// equals seeded_bit(seed, tag, k, i). Tags keep the three curves of one
/// snowflake independent (s = 0, t = 1, r = 2).
ChoiceSequence random_sequence(int depth, std::uint64_t seed, int tag);

/// The single PRNG primitive: three rounds of the splitmix64 finalizer over
/// seed, then tag, then (level << 56) ^ index; the result's low bit. Position
/// independent, so a stored prefix extended on demand is consistent with the
/// sequence generated in one shot.
int seeded_bit(std::uint64_t seed, int tag, int level, std::uint64_t index);

/// Base-4 digits of a segment address, coarsest level first.
using DigitWord = std::vector<int>;

/// Labels the composition of generator maps selected by digit word u under
/// choices s: the j-th label pairs u[j] with bit s_j(n_j), where n_j is the
/// base-4 value of the preceding digits u[0..j-1]. Throws if a digit is
/// outside 0..3 or u is longer than the stored depth.
std::vector<MapLabel> omega_encode(const DigitWord& u, const ChoiceSequence& s);

/// Rule for bits beyond a stored sequence's depth.
enum class Fill { zero, one, seeded };

/// Read-only sequence view that answers any level, applying the fill rule
/// past the stored depth.
struct ChoiceView {
    const ChoiceSequence* seq = nullptr;
    Fill fill = Fill::zero;
    std::uint64_t seed = 0;
    int tag = 0;

    int bit(int k, std::uint64_t i) const {
        if (seq && k < seq->depth()) return seq->get(k, i);
        switch (fill) {
        case Fill::zero: return 0;
        case Fill::one: return 1;
        default: return seeded_bit(seed, tag, k, i);
        }
    }
};

/// As omega_encode, but unbounded depth via the view's fill rule.
std::vector<MapLabel> omega_encode(const DigitWord& u, const ChoiceView& s);

/// A full snowflake description: parameter, three choice sequences (one per
/// side) to a common depth, and the fill rule for deeper levels.
struct SnowflakeSpec {
    KochParams params;
    std::string p_literal; ///< original text form of p, kept for reports
    int depth = 0;
    Fill fill = Fill::zero;
    std::uint64_t fill_seed = 0;
    ChoiceSequence s, t, r;

    /// View of sequence 0 = s, 1 = t, 2 = r with this spec's fill rule.
    ChoiceView view(int which) const;
};

SnowflakeSpec make_uniform_spec(double p, const std::string& literal, int depth,
                                int bit);
SnowflakeSpec make_random_spec(double p, const std::string& literal, int depth,
                               std::uint64_t seed);

struct ParsedP {
    double value = 0.0;
    std::string literal;
};

/// Parses "a/b" exactly (integer a, b with one correctly-rounded division) or
/// a plain decimal. Does not range-check; spec constructors do.
ParsedP parse_p_literal(const std::string& text);

/// Canonical JSON form: {"depth", "fill", "p", "r", "s", "t"}, keys sorted,
/// two-space indent, trailing newline; p as "a/b" string when the literal is
/// rational, else a JSON number; each sequence an array of level_hex strings.
std::string serialize_spec(const SnowflakeSpec& spec);

/// Inverse of serialize_spec. Throws std::invalid_argument on malformed
/// documents and std::domain_error when p is out of range.
SnowflakeSpec parse_spec(const std::string& text);

} // namespace kochforge
