#ifndef ANONCOMM_SEARCH_HPP
#define ANONCOMM_SEARCH_HPP

#include <atomic>
#include <cstdint>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "anoncomm/dist.hpp"
#include "anoncomm/scheme.hpp"
#include "anoncomm/verifier.hpp"

namespace anoncomm {

enum class SchemeModel { general, linear };

inline const char* to_string(SchemeModel m) {
  return m == SchemeModel::general ? "general" : "linear";
}

/// One candidate from the general (table-driven) model, scalar case only.
/// Shares are deterministic functions of a uniform seed with p^s states.
struct GeneralTables {
  // share_map[i][seed_state] -> share symbol of transmitter i+1
  std::vector<std::vector<std::uint32_t>> share_map;
  // encoder tables indexed by w*p + z
  std::vector<std::vector<std::uint32_t>> enc_desired;
  std::vector<std::vector<std::uint32_t>> enc_undesired;
  std::vector<std::uint32_t> decoder;  // p^K cells
};

/// One candidate from the linear model, scalar case: z_i = mix_i . seed,
/// desired signal v*w + ud*z, undesired signal uu*z, decoder sum g_i x_i.
struct LinearCoeffs {
  std::vector<std::vector<std::uint32_t>> mix;  // K rows, s cols
  std::vector<std::uint32_t> v_desired;
  std::vector<std::uint32_t> u_desired;
  std::vector<std::uint32_t> u_undesired;
  std::vector<std::uint32_t> g;
};

struct SchemeDescription {
  SchemeModel model = SchemeModel::general;
  SchemeParams params;
  std::uint32_t seed_dim = 0;
  std::uint64_t candidate_index = 0;
  std::optional<GeneralTables> general;
  std::optional<LinearCoeffs> linear;
};

/// Adapter so a searched candidate can be fed to the property verifier.
class DescribedScheme : public Scheme {
 public:
  explicit DescribedScheme(SchemeDescription desc) : desc_(std::move(desc)) {
    desc_.params.validate();
    if (desc_.params.L != 1 || desc_.params.N != 1)
      throw Error("described schemes are scalar (L = N = 1)");
  }

  std::string name() const override {
    return std::string("search-candidate-") + to_string(desc_.model);
  }
  SchemeParams params() const override { return desc_.params; }
  const SchemeDescription& description() const { return desc_; }

  std::uint64_t seed_states() const override {
    return detail::pow_u64(desc_.params.p, desc_.seed_dim);
  }

  std::vector<SymbolVector> shares(std::uint64_t seed_index) const override {
    const std::uint32_t p = desc_.params.p;
    std::vector<SymbolVector> out;
    if (desc_.model == SchemeModel::general) {
      for (const auto& f : desc_.general->share_map)
        out.push_back(SymbolVector({f[seed_index]}, p));
    } else {
      std::vector<std::uint32_t> seed(desc_.seed_dim);
      for (std::size_t j = seed.size(); j-- > 0;) {
        seed[j] = static_cast<std::uint32_t>(seed_index % p);
        seed_index /= p;
      }
      for (const auto& row : desc_.linear->mix) {
        std::uint32_t z = 0;
        for (std::size_t j = 0; j < row.size(); ++j) z += row[j] * seed[j];
        out.push_back(SymbolVector({z % p}, p));
      }
    }
    return out;
  }

  SymbolVector signal(std::uint32_t i, bool desired, const SymbolVector& w,
                      const SymbolVector& z) const override {
    const std::uint32_t p = desc_.params.p;
    if (desc_.model == SchemeModel::general) {
      const auto& tab = desired ? desc_.general->enc_desired[i - 1]
                                : desc_.general->enc_undesired[i - 1];
      return SymbolVector({tab[w[0] * p + z[0]]}, p);
    }
    const auto& lc = *desc_.linear;
    const std::uint32_t x =
        desired ? (lc.v_desired[i - 1] * w[0] + lc.u_desired[i - 1] * z[0]) % p
                : (lc.u_undesired[i - 1] * z[0]) % p;
    return SymbolVector({x}, p);
  }

  SymbolVector decode_transcript(
      const std::vector<SymbolVector>& transcript) const override {
    const std::uint32_t p = desc_.params.p;
    if (desc_.model == SchemeModel::general) {
      std::uint64_t idx = 0;
      for (const auto& sig : transcript) idx = idx * p + sig[0];
      return SymbolVector({desc_.general->decoder[idx]}, p);
    }
    std::uint32_t acc = 0;
    for (std::size_t i = 0; i < transcript.size(); ++i)
      acc += desc_.linear->g[i] * transcript[i][0];
    return SymbolVector({acc % p}, p);
  }

 private:
  SchemeDescription desc_;
};

struct SearchResult {
  SchemeModel model = SchemeModel::general;
  SchemeParams params;
  std::uint32_t seed_dim = 0;
  std::uint64_t space_size = 0;
  std::uint64_t candidates_visited = 0;
  std::uint64_t valid_schemes_found = 0;
  std::optional<SchemeDescription> first_witness;
  std::optional<Rational> min_rho;
  std::optional<Rational> min_eta;
  // Entropy structure across all accepted schemes (p-ary units).
  bool all_individual_shares_full_entropy = true;
  bool all_joint_shares_rank_deficient = true;
  double elapsed_seconds = 0.0;
};

struct SearchOptions {
  bool stop_at_first = false;
  unsigned workers = 1;
  std::uint64_t cap = kDefaultStateCap;
  // Restrict the linear model to raw share assignments: each mixing row has
  // exactly one nonzero coefficient and rows hit distinct seed symbols.
  bool uncoded_shares_only = false;
  // Long-search checkpointing: completed candidate ranges are appended to
  // this file as "lo-hi" decimal lines; on restart, fully recorded chunks
  // are skipped.
  std::string checkpoint_path;
  std::uint64_t checkpoint_chunk = 1u << 22;
};

namespace search_detail {

// Share entropies of one accepted candidate, via the exact-info engine.
inline void account_valid(const DescribedScheme& scheme, SearchResult& res) {
  const std::uint32_t p = scheme.params().p;
  const std::uint32_t K = scheme.params().K;
  DistTable joint(K);
  for (std::uint64_t s = 0; s < scheme.seed_states(); ++s) {
    Outcome o;
    for (const auto& z : scheme.shares(s)) o.push_back(z[0]);
    joint.add(o);
  }
  Rational rho_min{0, 1};
  bool have_rho = false;
  for (std::uint32_t i = 0; i < K; ++i) {
    const EntropyValue h = entropy(joint.marginal({i}), p);
    const Rational r = h.exact ? h.exact_value
                               : Rational(static_cast<std::int64_t>(
                                              h.value * 1000000.0L + 0.5L),
                                          1000000);
    if (!(h.exact && h.exact_value == Rational(1, 1)))
      res.all_individual_shares_full_entropy = false;
    if (!have_rho || r.to_double() < rho_min.to_double()) {
      rho_min = r;
      have_rho = true;
    }
  }
  const EntropyValue hj = entropy(joint, p);
  const Rational eta = hj.exact
                           ? hj.exact_value
                           : Rational(static_cast<std::int64_t>(
                                          hj.value * 1000000.0L + 0.5L),
                                      1000000);
  if (hj.exact && hj.exact_value.den == 1 &&
      hj.exact_value.num >= static_cast<std::int64_t>(K))
    res.all_joint_shares_rank_deficient = false;
  if (!hj.exact && hj.value > static_cast<long double>(K) - 1e-9L)
    res.all_joint_shares_rank_deficient = false;

  if (!res.min_rho || rho_min.to_double() < res.min_rho->to_double())
    res.min_rho = rho_min;
  if (!res.min_eta || eta.to_double() < res.min_eta->to_double()) res.min_eta = eta;
}

/// Fast acceptance test shared by both models: correctness for every
/// (theta, seed, message tuple), then exact transcript-distribution equality
/// across theta. All tables are flat arrays indexed by small integers.
struct FlatScheme {
  std::uint32_t K, p, S;                       // S = seed states
  std::vector<std::uint32_t> share;            // share[i*S + s]
  std::vector<std::uint32_t> encD, encU;       // enc[i*p*p + w*p + z]
  std::vector<std::uint32_t> decoder;          // p^K cells

  bool accept(std::vector<std::uint32_t>& scratch_counts) const {
    std::uint32_t msgs = 1;
    for (std::uint32_t i = 0; i < K; ++i) msgs *= p;
    std::uint32_t cells = 1;
    for (std::uint32_t i = 0; i < K; ++i) cells *= p;

    // correctness (cheap filter) with early exit
    std::vector<std::uint32_t> w(K);
    for (std::uint32_t theta = 0; theta < K; ++theta) {
      for (std::uint32_t s = 0; s < S; ++s) {
        for (std::uint32_t m = 0; m < msgs; ++m) {
          std::uint32_t idx = m;
          for (std::uint32_t i = K; i-- > 0;) {
            w[i] = idx % p;
            idx /= p;
          }
          std::uint32_t t = 0;
          for (std::uint32_t i = 0; i < K; ++i) {
            const std::uint32_t z = share[i * S + s];
            const auto& enc = (i == theta) ? encD : encU;
            t = t * p + enc[i * p * p + w[i] * p + z];
          }
          if (decoder[t] != w[theta]) return false;
        }
      }
    }

    // anonymity: exact transcript counts per theta
    scratch_counts.assign(static_cast<std::size_t>(K) * cells, 0);
    for (std::uint32_t theta = 0; theta < K; ++theta) {
      for (std::uint32_t s = 0; s < S; ++s) {
        for (std::uint32_t m = 0; m < msgs; ++m) {
          std::uint32_t idx = m;
          for (std::uint32_t i = K; i-- > 0;) {
            w[i] = idx % p;
            idx /= p;
          }
          std::uint32_t t = 0;
          for (std::uint32_t i = 0; i < K; ++i) {
            const std::uint32_t z = share[i * S + s];
            const auto& enc = (i == theta) ? encD : encU;
            t = t * p + enc[i * p * p + w[i] * p + z];
          }
          ++scratch_counts[theta * cells + t];
        }
      }
    }
    for (std::uint32_t theta = 1; theta < K; ++theta)
      for (std::uint32_t t = 0; t < cells; ++t)
        if (scratch_counts[t] != scratch_counts[theta * cells + t]) return false;
    return true;
  }
};

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > UINT64_MAX / b) throw Error("search space size overflow");
  return a * b;
}

}  // namespace search_detail

/// Exhaustive search over the general table model. Candidate order is a
/// mixed-radix integer with the decoder as the most significant digit.
inline SearchResult search_general(const SchemeParams& params, std::uint32_t seed_dim,
                                   const SearchOptions& opt = {}) {
  detail::Stopwatch sw;
  params.validate();
  if (params.L != 1 || params.N != 1)
    throw Error("general search supports L = N = 1 only");
  const std::uint32_t K = params.K;
  const std::uint32_t p = params.p;
  const std::uint32_t S = static_cast<std::uint32_t>(detail::pow_u64(p, seed_dim));
  std::uint32_t cells = 1;
  for (std::uint32_t i = 0; i < K; ++i) cells *= p;

  const std::uint64_t dec_radix = detail::pow_u64(p, cells);
  const std::uint64_t enc_radix = detail::pow_u64(p, p * p);
  const std::uint64_t f_radix = detail::pow_u64(p, S);
  std::uint64_t space = dec_radix;
  for (std::uint32_t i = 0; i < K; ++i) {
    space = search_detail::checked_mul(space, enc_radix * enc_radix);
    space = search_detail::checked_mul(space, f_radix);
  }
  if (space > opt.cap) throw CapExceeded(space, opt.cap);

  SearchResult res;
  res.model = SchemeModel::general;
  res.params = params;
  res.seed_dim = seed_dim;
  res.space_size = space;

  // digit layout (most significant first): decoder, then per transmitter
  // encD, encU, f
  std::vector<std::uint64_t> radices;
  radices.push_back(dec_radix);
  for (std::uint32_t i = 0; i < K; ++i) {
    radices.push_back(enc_radix);
    radices.push_back(enc_radix);
    radices.push_back(f_radix);
  }

  const unsigned workers = std::max(1u, opt.workers);
  std::atomic<bool> stop{false};
  std::vector<SearchResult> parts(workers);
  std::vector<std::uint64_t> part_first_index(workers, UINT64_MAX);
  std::vector<std::optional<SchemeDescription>> part_witness(workers);

  // chunked work queue; chunks already recorded in the checkpoint are skipped
  const std::uint64_t chunk = std::max<std::uint64_t>(1, opt.checkpoint_chunk);
  const std::uint64_t n_chunks = (space + chunk - 1) / chunk;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> done_ranges;
  if (!opt.checkpoint_path.empty()) {
    std::ifstream in(opt.checkpoint_path);
    std::string line;
    while (std::getline(in, line)) {
      const auto dash = line.find('-');
      if (dash == std::string::npos) continue;
      done_ranges.emplace_back(std::stoull(line.substr(0, dash)),
                               std::stoull(line.substr(dash + 1)));
    }
  }
  auto chunk_done = [&](std::uint64_t lo, std::uint64_t hi) {
    for (const auto& [a, b] : done_ranges)
      if (a <= lo && hi <= b) return true;
    return false;
  };
  std::mutex ckpt_mu;
  std::ofstream ckpt;
  if (!opt.checkpoint_path.empty())
    ckpt.open(opt.checkpoint_path, std::ios::app);
  std::atomic<std::uint64_t> next_chunk{0};

  auto run_range = [&](unsigned wk, std::uint64_t lo, std::uint64_t hi) {
    SearchResult& part = parts[wk];
    std::vector<std::uint64_t> digits(radices.size());
    {
      std::uint64_t idx = lo;
      for (std::size_t i = radices.size(); i-- > 0;) {
        digits[i] = idx % radices[i];
        idx /= radices[i];
      }
    }
    search_detail::FlatScheme fs;
    fs.K = K;
    fs.p = p;
    fs.S = S;
    fs.share.assign(static_cast<std::size_t>(K) * S, 0);
    fs.encD.assign(static_cast<std::size_t>(K) * p * p, 0);
    fs.encU.assign(static_cast<std::size_t>(K) * p * p, 0);
    fs.decoder.assign(cells, 0);
    std::vector<std::uint32_t> scratch;

    auto unpack = [p](std::uint64_t digit, std::uint32_t* out, std::uint32_t n) {
      for (std::uint32_t c = n; c-- > 0;) {
        out[c] = static_cast<std::uint32_t>(digit % p);
        digit /= p;
      }
    };

    for (std::uint64_t cand = lo; cand < hi; ++cand) {
      if (stop.load(std::memory_order_relaxed)) break;
      ++part.candidates_visited;
      unpack(digits[0], fs.decoder.data(), cells);
      for (std::uint32_t i = 0; i < K; ++i) {
        unpack(digits[1 + 3 * i], fs.encD.data() + i * p * p, p * p);
        unpack(digits[2 + 3 * i], fs.encU.data() + i * p * p, p * p);
        unpack(digits[3 + 3 * i], fs.share.data() + i * S, S);
      }
      if (fs.accept(scratch)) {
        ++part.valid_schemes_found;
        SchemeDescription desc;
        desc.model = SchemeModel::general;
        desc.params = params;
        desc.seed_dim = seed_dim;
        desc.candidate_index = cand;
        GeneralTables gt;
        for (std::uint32_t i = 0; i < K; ++i) {
          gt.share_map.emplace_back(fs.share.begin() + i * S,
                                    fs.share.begin() + (i + 1) * S);
          gt.enc_desired.emplace_back(fs.encD.begin() + i * p * p,
                                      fs.encD.begin() + (i + 1) * p * p);
          gt.enc_undesired.emplace_back(fs.encU.begin() + i * p * p,
                                        fs.encU.begin() + (i + 1) * p * p);
        }
        gt.decoder = fs.decoder;
        desc.general = std::move(gt);
        search_detail::account_valid(DescribedScheme(desc), part);
        if (cand < part_first_index[wk]) {
          part_first_index[wk] = cand;
          part_witness[wk] = std::move(desc);
        }
        if (opt.stop_at_first) {
          stop.store(true, std::memory_order_relaxed);
          break;
        }
      }
      // odometer increment
      for (std::size_t d = digits.size(); d-- > 0;) {
        if (++digits[d] < radices[d]) break;
        digits[d] = 0;
      }
    }
  };

  auto worker_loop = [&](unsigned wk) {
    for (;;) {
      const std::uint64_t ci = next_chunk.fetch_add(1, std::memory_order_relaxed);
      if (ci >= n_chunks || stop.load(std::memory_order_relaxed)) return;
      const std::uint64_t lo = ci * chunk;
      const std::uint64_t hi = std::min(space, lo + chunk);
      if (chunk_done(lo, hi)) continue;
      run_range(wk, lo, hi);
      if (ckpt.is_open() && !stop.load(std::memory_order_relaxed)) {
        std::lock_guard<std::mutex> lock(ckpt_mu);
        ckpt << lo << "-" << hi << "\n" << std::flush;
      }
    }
  };

  if (workers == 1) {
    worker_loop(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned wk = 0; wk < workers; ++wk) threads.emplace_back(worker_loop, wk);
    for (auto& t : threads) t.join();
  }

  std::uint64_t best = UINT64_MAX;
  for (unsigned wk = 0; wk < workers; ++wk) {
    const SearchResult& part = parts[wk];
    res.candidates_visited += part.candidates_visited;
    res.valid_schemes_found += part.valid_schemes_found;
    res.all_individual_shares_full_entropy &= part.all_individual_shares_full_entropy;
    res.all_joint_shares_rank_deficient &= part.all_joint_shares_rank_deficient;
    if (part.min_rho &&
        (!res.min_rho || part.min_rho->to_double() < res.min_rho->to_double()))
      res.min_rho = part.min_rho;
    if (part.min_eta &&
        (!res.min_eta || part.min_eta->to_double() < res.min_eta->to_double()))
      res.min_eta = part.min_eta;
    if (part_first_index[wk] < best) {
      best = part_first_index[wk];
      res.first_witness = part_witness[wk];
    }
  }
  res.elapsed_seconds = sw.seconds();
  return res;
}

namespace search_detail {

inline bool mix_is_uncoded(const std::vector<std::vector<std::uint32_t>>& mix) {
  std::vector<bool> used;
  if (mix.empty()) return true;
  used.assign(mix[0].size(), false);
  for (const auto& row : mix) {
    int nz = -1;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) {
        if (nz >= 0) return false;  // mixed share
        nz = static_cast<int>(j);
      }
    if (nz < 0) return false;  // constant share is not a raw seed symbol
    if (used[nz]) return false;
    used[nz] = true;
  }
  return true;
}

}  // namespace search_detail

/// Exhaustive search over the scalar linear model.
inline SearchResult search_linear(const SchemeParams& params, std::uint32_t seed_dim,
                                  const SearchOptions& opt = {}) {
  detail::Stopwatch sw;
  params.validate();
  if (params.L != 1 || params.N != 1)
    throw Error("linear scalar search supports L = N = 1 only");
  const std::uint32_t K = params.K;
  const std::uint32_t p = params.p;
  const std::uint32_t S = static_cast<std::uint32_t>(detail::pow_u64(p, seed_dim));
  std::uint32_t cells = 1;
  for (std::uint32_t i = 0; i < K; ++i) cells *= p;

  const std::uint64_t dec_radix = detail::pow_u64(p, K);
  const std::uint64_t tx_radix = detail::pow_u64(p, 3);  // (v, ud, uu)
  const std::uint64_t mix_radix = detail::pow_u64(p, K * seed_dim);
  std::uint64_t space = dec_radix;
  for (std::uint32_t i = 0; i < K; ++i)
    space = search_detail::checked_mul(space, tx_radix);
  space = search_detail::checked_mul(space, mix_radix);
  if (space > opt.cap) throw CapExceeded(space, opt.cap);

  SearchResult res;
  res.model = SchemeModel::linear;
  res.params = params;
  res.seed_dim = seed_dim;
  res.space_size = space;

  std::vector<std::uint64_t> radices;
  radices.push_back(dec_radix);
  for (std::uint32_t i = 0; i < K; ++i) radices.push_back(tx_radix);
  radices.push_back(mix_radix);

  search_detail::FlatScheme fs;
  fs.K = K;
  fs.p = p;
  fs.S = S;
  fs.share.assign(static_cast<std::size_t>(K) * S, 0);
  fs.encD.assign(static_cast<std::size_t>(K) * p * p, 0);
  fs.encU.assign(static_cast<std::size_t>(K) * p * p, 0);
  fs.decoder.assign(cells, 0);
  std::vector<std::uint32_t> scratch;

  std::vector<std::uint32_t> g(K), v(K), ud(K), uu(K);
  std::vector<std::vector<std::uint32_t>> mix(K, std::vector<std::uint32_t>(seed_dim));
  std::vector<std::uint64_t> digits(radices.size(), 0);

  std::uint64_t first_index = UINT64_MAX;
  for (std::uint64_t cand = 0; cand < space; ++cand) {
    ++res.candidates_visited;
    {
      std::uint64_t d = digits[0];
      for (std::uint32_t i = K; i-- > 0;) {
        g[i] = static_cast<std::uint32_t>(d % p);
        d /= p;
      }
      for (std::uint32_t i = 0; i < K; ++i) {
        d = digits[1 + i];
        uu[i] = static_cast<std::uint32_t>(d % p);
        d /= p;
        ud[i] = static_cast<std::uint32_t>(d % p);
        d /= p;
        v[i] = static_cast<std::uint32_t>(d % p);
      }
      d = digits[1 + K];
      for (std::uint32_t i = K; i-- > 0;)
        for (std::uint32_t j = seed_dim; j-- > 0;) {
          mix[i][j] = static_cast<std::uint32_t>(d % p);
          d /= p;
        }
    }
    bool consider = true;
    if (opt.uncoded_shares_only && !search_detail::mix_is_uncoded(mix))
      consider = false;

    if (consider) {
      // expand coefficients to the flat table form
      for (std::uint32_t s = 0; s < S; ++s) {
        std::uint64_t si = s;
        std::vector<std::uint32_t> seed(seed_dim);
        for (std::uint32_t j = seed_dim; j-- > 0;) {
          seed[j] = static_cast<std::uint32_t>(si % p);
          si /= p;
        }
        for (std::uint32_t i = 0; i < K; ++i) {
          std::uint32_t z = 0;
          for (std::uint32_t j = 0; j < seed_dim; ++j) z += mix[i][j] * seed[j];
          fs.share[i * S + s] = z % p;
        }
      }
      for (std::uint32_t i = 0; i < K; ++i)
        for (std::uint32_t wv = 0; wv < p; ++wv)
          for (std::uint32_t zv = 0; zv < p; ++zv) {
            fs.encD[i * p * p + wv * p + zv] = (v[i] * wv + ud[i] * zv) % p;
            fs.encU[i * p * p + wv * p + zv] = (uu[i] * zv) % p;
          }
      std::uint32_t dec_cells = cells;
      for (std::uint32_t t = 0; t < dec_cells; ++t) {
        std::uint32_t idx = t, acc = 0;
        for (std::uint32_t i = K; i-- > 0;) {
          acc += g[i] * (idx % p);
          idx /= p;
        }
        fs.decoder[t] = acc % p;
      }

      if (fs.accept(scratch)) {
        ++res.valid_schemes_found;
        SchemeDescription desc;
        desc.model = SchemeModel::linear;
        desc.params = params;
        desc.seed_dim = seed_dim;
        desc.candidate_index = cand;
        LinearCoeffs lc;
        lc.mix = mix;
        lc.v_desired = v;
        lc.u_desired = ud;
        lc.u_undesired = uu;
        lc.g = g;
        desc.linear = std::move(lc);
        search_detail::account_valid(DescribedScheme(desc), res);
        if (cand < first_index) {
          first_index = cand;
          res.first_witness = std::move(desc);
        }
        if (opt.stop_at_first) break;
      }
    }
    for (std::size_t d = digits.size(); d-- > 0;) {
      if (++digits[d] < radices[d]) break;
      digits[d] = 0;
    }
  }
  res.elapsed_seconds = sw.seconds();
  return res;
}

inline SearchResult search(SchemeModel model, const SchemeParams& params,
                           std::uint32_t seed_dim, const SearchOptions& opt = {}) {
  return model == SchemeModel::general ? search_general(params, seed_dim, opt)
                                       : search_linear(params, seed_dim, opt);
}

/// Smallest seed dimension admitting at least one valid scheme. Scans s = 0..K.
inline std::uint32_t min_seed_dimension(SchemeModel model, const SchemeParams& params,
                                        const SearchOptions& base_opt = {}) {
  SearchOptions opt = base_opt;
  opt.stop_at_first = true;
  for (std::uint32_t s = 0; s <= params.K; ++s) {
    const SearchResult r = search(model, params, s, opt);
    if (r.valid_schemes_found > 0) return s;
  }
  throw Error("no valid scheme found for any seed dimension up to K");
}

struct CodedRandomnessReport {
  std::uint32_t seed_dim = 0;            // K-1
  std::uint64_t valid_schemes = 0;       // at minimal seed dimension
  std::uint64_t uncoded_valid_schemes = 0;
  bool necessity = false;  // valid schemes exist, none with raw disjoint shares
};

/// At the minimal seed dimension s = K-1, valid linear schemes exist but every
/// one of them mixes at least one share from two or more seed symbols.
inline CodedRandomnessReport check_coded_randomness_necessity(
    const SchemeParams& params, const SearchOptions& base_opt = {}) {
  CodedRandomnessReport rep;
  rep.seed_dim = params.K - 1;
  SearchOptions opt = base_opt;
  opt.stop_at_first = false;
  const SearchResult all = search_linear(params, rep.seed_dim, opt);
  opt.uncoded_shares_only = true;
  const SearchResult uncoded = search_linear(params, rep.seed_dim, opt);
  rep.valid_schemes = all.valid_schemes_found;
  rep.uncoded_valid_schemes = uncoded.valid_schemes_found;
  rep.necessity = all.valid_schemes_found > 0 && uncoded.valid_schemes_found == 0;
  return rep;
}

/// With N < L no linear decoder can satisfy rank(G V) = L: enumerate all
/// L x N filter and N x L encoding matrices and look for a full-rank product.
inline bool check_rate_infeasible(const SchemeParams& params) {
  params.validate();
  if (params.N >= params.L)
    throw Error("rate infeasibility check expects N < L");
  const std::uint32_t p = params.p;
  const std::uint64_t mats = detail::pow_u64(p, params.L * params.N);
  for (std::uint64_t gi = 0; gi < mats; ++gi) {
    std::vector<std::uint32_t> gdata(params.L * params.N);
    std::uint64_t idx = gi;
    for (std::size_t k = gdata.size(); k-- > 0;) {
      gdata[k] = static_cast<std::uint32_t>(idx % p);
      idx /= p;
    }
    const Matrix G(params.L, params.N, gdata, p);
    for (std::uint64_t vi = 0; vi < mats; ++vi) {
      std::vector<std::uint32_t> vdata(params.N * params.L);
      idx = vi;
      for (std::size_t k = vdata.size(); k-- > 0;) {
        vdata[k] = static_cast<std::uint32_t>(idx % p);
        idx /= p;
      }
      const Matrix V(params.N, params.L, vdata, p);
      if (rank(G * V) == params.L) return false;  // feasible after all
    }
  }
  return true;
}

}  // namespace anoncomm

#endif  // ANONCOMM_SEARCH_HPP
