#pragma once

#include <cstdint>
#include <optional>

#include "qkd/bitstring.hpp"

namespace qkd {

struct SimConfig {
  std::uint64_t n_pulses = 1000000;
  double p_ir = 0.0;                // intercept-resend probability
  double V = 1.0;                   // visibility; bit flip with probability (1-V)/2
  double t_total = 1.0;             // transmittance including detection
  std::uint64_t seed = 1;
  double f_EC = 1.0;
  std::optional<double> pa_rate;    // fraction removed in PA; default h(qber_hat)
  bool amplify = true;              // produce key_bits by Toeplitz hashing
  unsigned threads = 0;             // 0 = hardware concurrency

  void validate() const;
};

struct SimOutcome {
  std::uint64_t n_pulses = 0;
  std::uint64_t n_detected = 0;
  std::uint64_t n_sifted = 0;
  std::uint64_t n_errors = 0;
  double qber_hat = 0.0;
  std::uint64_t eve_hits = 0;       // sifted bits whose value Eve learned exactly
  std::uint64_t final_length = 0;
  BitString key_bits;
};

/// Pulse-level BB84: Alice's random bit/basis, intercept-resend before the
/// channel, depolarization, loss, Bob's random basis, sifting. Pulses are
/// simulated in fixed-size batches, each from its own stream derived from the
/// seed, so results do not depend on the thread count.
SimOutcome run_bb84(const SimConfig& cfg);

/// Multiplies `key` by a seeded random Toeplitz matrix over GF(2).
BitString privacy_amplify(const BitString& key, std::size_t out_len, std::uint64_t seed);

/// floor(n_sifted · max(1 - f_EC h(qber_hat) - I_E, 0)).
std::uint64_t final_key_length(std::uint64_t n_sifted, double qber_hat, double I_E, double f_EC);

/// SplitMix64 mixer used to derive sub-stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace qkd
