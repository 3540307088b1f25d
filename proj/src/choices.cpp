#include "kochforge/choices.hpp"

#include <bit>
#include <cctype>
#include <cstring>
#include <stdexcept>

#include <json.hpp>

namespace kochforge {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

void check_depth(int depth) {
    if (depth < 0 || depth > kMaxDepth)
        throw std::invalid_argument("depth must lie in [0, " +
                                    std::to_string(kMaxDepth) + "]");
}

std::size_t level_bytes(int k) {
    return static_cast<std::size_t>((ChoiceSequence::level_size(k) + 7) / 8);
}

// Zeroes padding bits past the 4^k payload (levels 0 and 1 only).
void mask_padding(std::vector<std::uint8_t>& bytes, int k) {
    std::uint64_t nbits = ChoiceSequence::level_size(k);
    unsigned rem = nbits % 8;
    if (rem) bytes.back() &= static_cast<std::uint8_t>((1u << rem) - 1);
}

} // namespace

std::uint64_t ChoiceSequence::zeros_at_level(int k) const {
    // Word-at-a-time popcount; padding bits are zero so they never count.
    const std::vector<std::uint8_t>& bytes = levels[k];
    std::uint64_t ones = 0;
    std::size_t i = 0;
    for (; i + 8 <= bytes.size(); i += 8) {
        std::uint64_t word;
        std::memcpy(&word, bytes.data() + i, 8);
        ones += std::popcount(word);
    }
    for (; i < bytes.size(); ++i) ones += std::popcount(bytes[i]);
    return level_size(k) - ones;
}

std::string ChoiceSequence::level_hex(int k) const {
    static const char digits[] = "0123456789abcdef";
    std::uint64_t nbits = level_size(k);
    std::uint64_t ndigits = nbits < 4 ? 1 : nbits / 4;
    std::string out(ndigits, '0');
    for (std::uint64_t j = 0; j < ndigits; ++j) {
        unsigned nib = (levels[k][j >> 1] >> ((j & 1) * 4)) & 0xf;
        out[j] = digits[nib];
    }
    return out;
}

int seeded_bit(std::uint64_t seed, int tag, int level, std::uint64_t index) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ static_cast<std::uint64_t>(tag));
    h = mix64(h ^ ((static_cast<std::uint64_t>(level) << 56) ^ index));
    return static_cast<int>(h & 1);
}

ChoiceSequence uniform_sequence(int depth, int bit) {
    check_depth(depth);
    ChoiceSequence c;
    c.levels.resize(depth);
    for (int k = 0; k < depth; ++k) {
        c.levels[k].assign(level_bytes(k), bit ? 0xff : 0x00);
        if (bit) mask_padding(c.levels[k], k);
    }
    return c;
}

ChoiceSequence random_sequence(int depth, std::uint64_t seed, int tag) {
    ChoiceSequence c = uniform_sequence(depth, 0);
    for (int k = 0; k < depth; ++k)
        for (std::uint64_t i = 0; i < ChoiceSequence::level_size(k); ++i)
            if (seeded_bit(seed, tag, k, i)) c.set(k, i, 1);
    return c;
}

namespace {

template <class Bits>
std::vector<MapLabel> encode_with(const DigitWord& u, const Bits& bits) {
    std::vector<MapLabel> word;
    word.reserve(u.size());
    std::uint64_t prefix = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        int d = u[j];
        if (d < 0 || d > 3)
            throw std::invalid_argument("digit word entries must lie in 0..3");
        word.push_back({d, bits(static_cast<int>(j), prefix)});
        prefix = prefix * 4 + static_cast<std::uint64_t>(d);
    }
    return word;
}

} // namespace

std::vector<MapLabel> omega_encode(const DigitWord& u, const ChoiceSequence& s) {
    if (static_cast<int>(u.size()) > s.depth())
        throw std::invalid_argument("digit word deeper than the stored choices");
    return encode_with(u, [&](int k, std::uint64_t i) { return s.get(k, i); });
}

std::vector<MapLabel> omega_encode(const DigitWord& u, const ChoiceView& s) {
    return encode_with(u, [&](int k, std::uint64_t i) { return s.bit(k, i); });
}

ChoiceView SnowflakeSpec::view(int which) const {
    const ChoiceSequence* seq = which == 0 ? &s : which == 1 ? &t : &r;
    return {seq, fill, fill_seed, which};
}

SnowflakeSpec make_uniform_spec(double p, const std::string& literal, int depth,
                                int bit) {
    SnowflakeSpec spec;
    spec.params = make_params(p);
    spec.p_literal = literal;
    spec.depth = depth;
    spec.s = uniform_sequence(depth, bit);
    spec.t = uniform_sequence(depth, bit);
    spec.r = uniform_sequence(depth, bit);
    return spec;
}

SnowflakeSpec make_random_spec(double p, const std::string& literal, int depth,
                               std::uint64_t seed) {
    SnowflakeSpec spec;
    spec.params = make_params(p);
    spec.p_literal = literal;
    spec.depth = depth;
    spec.s = random_sequence(depth, seed, 0);
    spec.t = random_sequence(depth, seed, 1);
    spec.r = random_sequence(depth, seed, 2);
    return spec;
}

ParsedP parse_p_literal(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty value for p");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            std::size_t na = 0, nb = 0;
            long long num = std::stoll(text.substr(0, slash), &na);
            long long den = std::stoll(text.substr(slash + 1), &nb);
            if (na != slash || nb != text.size() - slash - 1)
                throw std::invalid_argument("trailing characters");
            if (den <= 0) throw std::invalid_argument("denominator must be positive");
            return {static_cast<double>(num) / static_cast<double>(den), text};
        }
        std::size_t n = 0;
        double v = std::stod(text, &n);
        if (n != text.size()) throw std::invalid_argument("trailing characters");
        return {v, text};
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("p value out of numeric range: " + text);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("cannot parse p value: " + text);
    }
}

namespace {

using nlohmann::json;

json fill_to_json(Fill fill, std::uint64_t seed) {
    switch (fill) {
    case Fill::zero: return "zero";
    case Fill::one: return "one";
    default: return json{{"seed", seed}};
    }
}

std::vector<std::uint8_t> parse_hex_level(int k, const std::string& text) {
    std::uint64_t nbits = ChoiceSequence::level_size(k);
    std::uint64_t ndigits = nbits < 4 ? 1 : nbits / 4;
    if (text.size() != ndigits)
        throw std::invalid_argument("level " + std::to_string(k) + " expects " +
                                    std::to_string(ndigits) + " hex digits, got " +
                                    std::to_string(text.size()));
    std::vector<std::uint8_t> bytes(level_bytes(k), 0);
    for (std::uint64_t j = 0; j < ndigits; ++j) {
        char c = text[j];
        unsigned nib;
        if (c >= '0' && c <= '9') nib = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') nib = static_cast<unsigned>(c - 'a') + 10;
        else throw std::invalid_argument(std::string("bad hex digit '") + c + "'");
        bytes[j >> 1] |= static_cast<std::uint8_t>(nib << ((j & 1) * 4));
    }
    // Padding bits past 4^k must be zero so serialization is canonical.
    std::vector<std::uint8_t> masked = bytes;
    mask_padding(masked, k);
    if (masked != bytes)
        throw std::invalid_argument("level " + std::to_string(k) +
                                    " has nonzero padding bits");
    return bytes;
}

ChoiceSequence sequence_from_json(const json& arr, int depth, const char* name) {
    if (!arr.is_array() || static_cast<int>(arr.size()) != depth)
        throw std::invalid_argument(std::string(name) + " must list exactly " +
                                    std::to_string(depth) + " levels");
    ChoiceSequence seq;
    seq.levels.resize(depth);
    for (int k = 0; k < depth; ++k) {
        if (!arr[k].is_string())
            throw std::invalid_argument(std::string(name) + " levels must be hex strings");
        seq.levels[k] = parse_hex_level(k, arr[k].get<std::string>());
    }
    return seq;
}

} // namespace

std::string serialize_spec(const SnowflakeSpec& spec) {
    json j;
    j["depth"] = spec.depth;
    j["fill"] = fill_to_json(spec.fill, spec.fill_seed);
    if (spec.p_literal.find('/') != std::string::npos) j["p"] = spec.p_literal;
    else j["p"] = spec.params.p;
    for (auto [key, seq] : {std::pair<const char*, const ChoiceSequence*>{"s", &spec.s},
                            {"t", &spec.t},
                            {"r", &spec.r}}) {
        json arr = json::array();
        for (int k = 0; k < spec.depth; ++k) arr.push_back(seq->level_hex(k));
        j[key] = arr;
    }
    return j.dump(2) + "\n";
}

SnowflakeSpec parse_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("spec must be a JSON object");
    for (auto& [key, value] : j.items()) {
        (void)value;
        if (key != "depth" && key != "fill" && key != "p" && key != "s" &&
            key != "t" && key != "r")
            throw std::invalid_argument("unknown spec key: " + key);
    }
    for (const char* key : {"depth", "fill", "p", "s", "t", "r"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("spec misses key: ") + key);

    SnowflakeSpec spec;
    if (!j["depth"].is_number_integer())
        throw std::invalid_argument("depth must be an integer");
    spec.depth = j["depth"].get<int>();
    check_depth(spec.depth);

    ParsedP p;
    if (j["p"].is_string()) p = parse_p_literal(j["p"].get<std::string>());
    else if (j["p"].is_number()) p = {j["p"].get<double>(), j["p"].dump()};
    else throw std::invalid_argument("p must be a number or an \"a/b\" string");
    spec.params = make_params(p.value);
    spec.p_literal = p.literal;

    const json& fill = j["fill"];
    if (fill.is_string()) {
        std::string f = fill.get<std::string>();
        if (f == "zero") spec.fill = Fill::zero;
        else if (f == "one") spec.fill = Fill::one;
        else throw std::invalid_argument("fill must be \"zero\", \"one\" or {\"seed\": n}");
    } else if (fill.is_object() && fill.contains("seed") &&
               fill["seed"].is_number_integer() && fill.size() == 1) {
        spec.fill = Fill::seeded;
        spec.fill_seed = fill["seed"].get<std::uint64_t>();
    } else {
        throw std::invalid_argument("fill must be \"zero\", \"one\" or {\"seed\": n}");
    }

    spec.s = sequence_from_json(j["s"], spec.depth, "s");
    spec.t = sequence_from_json(j["t"], spec.depth, "t");
    spec.r = sequence_from_json(j["r"], spec.depth, "r");
    return spec;
}

} // namespace kochforge
