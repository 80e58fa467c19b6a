#include "qkd/mc_sim.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qkd/mathcore.hpp"
#include "qkd/qubit_bounds.hpp"

namespace qkd {
namespace {

constexpr std::uint64_t kBatch = 1 << 16;
constexpr std::uint64_t kPaStream = 0x9e3779b97f4a7c15ULL;

double unit(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

struct BatchTally {
  std::uint64_t detected = 0;
  std::uint64_t sifted = 0;
  std::uint64_t errors = 0;
  std::uint64_t eve_hits = 0;
  BitString key;  // Alice's sifted bits
};

BatchTally simulate_batch(const SimConfig& cfg, std::uint64_t index, std::uint64_t count) {
  std::mt19937_64 g(splitmix64(cfg.seed ^ splitmix64(index)));
  const double flip = 0.5 * (1.0 - cfg.V);
  BatchTally out;
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t w = g();
    const bool a_bit = w & 1U;
    const bool a_basis = (w >> 1) & 1U;
    const bool e_basis = (w >> 2) & 1U;
    const bool e_guess = (w >> 3) & 1U;
    const bool b_basis = (w >> 4) & 1U;
    const bool b_guess = (w >> 5) & 1U;
    const double u_ir = unit(g);
    const double u_flip = unit(g);
    const double u_loss = unit(g);

    bool bit = a_bit;
    bool basis = a_basis;
    bool eve_knows = false;
    if (u_ir < cfg.p_ir) {
      eve_knows = e_basis == a_basis;
      bit = eve_knows ? a_bit : e_guess;
      basis = e_basis;
    }
    if (u_flip < flip) bit = !bit;
    if (u_loss >= cfg.t_total) continue;
    ++out.detected;
    const bool b_bit = b_basis == basis ? bit : b_guess;
    if (b_basis != a_basis) continue;
    ++out.sifted;
    if (b_bit != a_bit) ++out.errors;
    if (eve_knows) ++out.eve_hits;
    out.key.push_back(a_bit);
  }
  return out;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void SimConfig::validate() const {
  if (n_pulses < 1) throw std::domain_error("SimConfig: n_pulses must be >= 1");
  require_probability(p_ir, "p_ir");
  require_probability(V, "V");
  require_probability(t_total, "t_total");
  if (f_EC < 1.0) throw std::domain_error("SimConfig: f_EC must be >= 1");
  if (pa_rate) require_probability(*pa_rate, "pa_rate");
}

SimOutcome run_bb84(const SimConfig& cfg) {
  cfg.validate();
  const std::uint64_t n_batches = (cfg.n_pulses + kBatch - 1) / kBatch;
  std::vector<BatchTally> tallies(n_batches);
  std::atomic<std::uint64_t> next{0};
  const auto worker = [&] {
    for (std::uint64_t b = next++; b < n_batches; b = next++) {
      const std::uint64_t count = std::min(kBatch, cfg.n_pulses - b * kBatch);
      tallies[b] = simulate_batch(cfg, b, count);
    }
  };
  unsigned n_threads = cfg.threads ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::uint64_t>(n_threads, n_batches));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  SimOutcome out;
  out.n_pulses = cfg.n_pulses;
  BitString sifted_key;
  for (auto& t : tallies) {
    out.n_detected += t.detected;
    out.n_sifted += t.sifted;
    out.n_errors += t.errors;
    out.eve_hits += t.eve_hits;
    sifted_key.append(t.key);
  }
  out.qber_hat = out.n_sifted ? static_cast<double>(out.n_errors) / static_cast<double>(out.n_sifted) : 0.0;
  const double i_e = cfg.pa_rate ? *cfg.pa_rate : binary_entropy(std::min(out.qber_hat, 0.5));
  out.final_length = final_key_length(out.n_sifted, out.qber_hat, i_e, cfg.f_EC);
  if (cfg.amplify) out.key_bits = privacy_amplify(sifted_key, out.final_length, splitmix64(cfg.seed ^ kPaStream));
  return out;
}

BitString privacy_amplify(const BitString& key, std::size_t out_len, std::uint64_t seed) {
  const std::size_t n = key.size();
  if (out_len > n) throw std::invalid_argument("privacy_amplify: out_len exceeds key length");
  BitString out(out_len);
  if (out_len == 0) return out;

  // Row i of the matrix is the window of `diag` starting at bit out_len-1-i,
  // so entries depend only on column minus row.
  const std::size_t diag_bits = n + out_len - 1;
  std::vector<std::uint64_t> diag((diag_bits + 63) / 64 + 1, 0);
  std::mt19937_64 g(splitmix64(seed));
  for (std::size_t w = 0; w + 1 < diag.size(); ++w) diag[w] = g();
  if (diag_bits & 63) diag[diag.size() - 2] &= (std::uint64_t{1} << (diag_bits & 63)) - 1;

  const auto& kw = key.words();
  for (std::size_t i = 0; i < out_len; ++i) {
    const std::size_t off = out_len - 1 - i;
    const std::size_t base = off >> 6;
    const unsigned sh = off & 63;
    std::uint64_t acc = 0;
    if (sh == 0) {
      for (std::size_t w = 0; w < kw.size(); ++w) acc ^= kw[w] & diag[base + w];
    } else {
      for (std::size_t w = 0; w < kw.size(); ++w)
        acc ^= kw[w] & ((diag[base + w] >> sh) | (diag[base + w + 1] << (64 - sh)));
    }
    out.set(i, std::popcount(acc) & 1);
  }
  return out;
}

std::uint64_t final_key_length(std::uint64_t n_sifted, double qber_hat, double I_E, double f_EC) {
  const double frac = 1.0 - f_EC * binary_entropy(std::clamp(qber_hat, 0.0, 1.0)) - I_E;
  if (!(frac > 0.0)) return 0;
  return static_cast<std::uint64_t>(std::floor(static_cast<double>(n_sifted) * frac));
}

}  // namespace qkd
