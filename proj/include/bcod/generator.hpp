#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "bcod/bitvec.hpp"
#include "bcod/container.hpp"

namespace bcod {

// splitmix64, used only to derive per-block seeds from the user seed.
struct Splitmix64 {
    uint64_t state;

    uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

// xorshift64* (Marsaglia xorshift with a multiplicative finisher). State must
// be nonzero; pure 64-bit integer ops, so streams are identical on every
// platform.
struct Xorshift64Star {
    uint64_t state;

    uint64_t next() {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        return state * 0x2545F4914F6CDD1Dull;
    }
};

enum class SourceKind : uint8_t { uniform, bernoulli, zeros, ones, file };

// Deterministic bit sources. Random kinds draw from one xorshift64* stream
// per 65536-bit block, block seeds derived from (seed, block index) via
// splitmix64 — so output depends only on (kind, length, seed), never on the
// thread count.
struct GeneratorSpec {
    SourceKind kind = SourceKind::zeros;
    double p = 0.5;           // bernoulli: probability of a 1-bit
    uint64_t length_bits = 0; // ignored for file
    uint64_t seed = 0;
    std::string path;         // file only
};

inline constexpr uint64_t kGeneratorBlockBits = 65536;

BitVec generate(const GeneratorSpec& spec);

namespace serial {
BitVec generate(const GeneratorSpec& spec);
}

// Analytic expected payload bits per source bit for an i.i.d. Bernoulli(p)
// source (p = probability of a 1-bit) recoded through the given mode. Token
// class k occurs with probability p^(k-1)(1-p); the tail is truncated where
// the class probability drops below 2^-40 and renormalized, the mode's book
// is built over those probabilities, and the ratio is
// sum P(k) len(code_k) / sum P(k) k. Requires 0 < p < 1.
double expected_ratio_oracle(double p, Mode mode);

// Outcome of decoding a corrupted symmetric payload from both ends.
// Recovered counts compare (class, bit span) pairs against the clean parse;
// the damage window is measured in clean payload coordinates.
struct FlipReport {
    uint64_t total_tokens = 0;
    uint64_t forward_recovered = 0;
    uint64_t backward_recovered = 0;
    uint64_t bidirectional_recovered = 0; // forward prefix + backward suffix splice
    uint64_t damage_window_bits = 0;
    uint64_t payload_bits = 0;
};

// Encodes v in symmetric mode, flips the given payload bit positions, then
// decodes forward and backward with a resynchronizing parser (on a dead trie
// edge the parse restarts one bit after the failed start). Duplicate
// positions collapse; positions must lie inside the payload.
FlipReport flip_experiment(const BitVec& v, std::span<const uint64_t> flip_positions);

} // namespace bcod
