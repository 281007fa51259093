#ifndef ANONCOMM_CENSUS_HPP
#define ANONCOMM_CENSUS_HPP

#include <array>
#include <atomic>
#include <cstdint>
#include <set>
#include <thread>
#include <vector>

#include "anoncomm/verifier.hpp"

namespace anoncomm {

/// Census over all capacity-achieving general schemes at K = 3, p = 2,
/// L = N = 1, seed dimension 2, recording which decoder tables appear among
/// the schemes that pass correctness and anonymity.
///
/// The raw parameterization (3 share maps x 6 encoder tables x decoder) has
/// ~1.8e13 candidates; enumerating it directly is out of reach. Acceptance,
/// however, only depends on each candidate through
///   - the decoder table g,
///   - the joint share coloring seed -> (z1,z2,z3) as a multiset over the 4
///     equally likely seeds (seeds are exchangeable),
///   - per transmitter, the desired encoder's two output columns
///     (w -> x at z=0 and at z=1), ordered in w, and
///   - per transmitter, the undesired encoder's output multiset per share
///     value (the transmitter's message is uniform and private, so only the
///     value multiset {U(0,z), U(1,z)} enters correctness and the transcript
///     distribution).
/// Enumerating these equivalence classes covers the full space exactly.
struct DecoderCensus {
  std::uint64_t nominal_space = 0;      // raw candidate count covered
  std::uint64_t classes_examined = 0;   // (g, coloring) outer nodes
  std::uint64_t accepted_classes = 0;   // effective classes passing both checks
  std::set<std::vector<std::uint32_t>> accepted_decoders;
  bool addition_decoder_present = false;
  bool all_latin = true;
  bool all_match_addition_up_to_constant = true;
  double elapsed_seconds = 0.0;
};

namespace census_detail {

// transcript index t = y0*4 + y1*2 + y2
inline constexpr std::array<std::array<int, 2>, 3> kOthers{{{1, 2}, {0, 2}, {0, 1}}};

inline bool latin(const std::vector<std::uint32_t>& g) {
  for (std::uint32_t t = 0; t < 8; ++t)
    for (std::uint32_t coord = 0; coord < 3; ++coord)
      if (g[t] == g[t ^ (4u >> coord)]) return false;
  return true;
}

inline bool parity_up_to_constant(const std::vector<std::uint32_t>& g) {
  const std::uint32_t c = g[0];
  for (std::uint32_t t = 0; t < 8; ++t)
    if (g[t] != ((static_cast<std::uint32_t>(__builtin_popcount(t)) & 1u) ^ c))
      return false;
  return true;
}

struct PerDecoder {
  std::uint64_t accepted_classes = 0;
  bool accepted = false;
};

inline PerDecoder scan_decoder(std::uint32_t gbits) {
  std::vector<std::uint32_t> g(8);
  for (std::uint32_t t = 0; t < 8; ++t) g[t] = (gbits >> t) & 1u;

  // Ok[pos][col][ma][mb]: can position `pos` carry the message with desired
  // column `col` while the other two coordinates range over masks ma, mb.
  bool Ok[3][4][3][3];
  for (int pos = 0; pos < 3; ++pos)
    for (int col = 0; col < 4; ++col)
      for (int ma = 1; ma <= 3; ++ma)
        for (int mb = 1; mb <= 3; ++mb) {
          bool ok = true;
          for (int w = 0; w < 2 && ok; ++w) {
            const int d = (w == 0) ? (col >> 1) : (col & 1);
            for (int xa = 0; xa < 2 && ok; ++xa) {
              if (!(ma & (1 << xa))) continue;
              for (int xb = 0; xb < 2 && ok; ++xb) {
                if (!(mb & (1 << xb))) continue;
                int y[3];
                y[pos] = d;
                y[kOthers[pos][0]] = xa;
                y[kOthers[pos][1]] = xb;
                const int t = y[0] * 4 + y[1] * 2 + y[2];
                if (g[t] != static_cast<std::uint32_t>(w)) ok = false;
              }
            }
          }
          Ok[pos][col][ma - 1][mb - 1] = ok;
        }

  PerDecoder out;
  // share colorings: multisets of 4 colors (z1,z2,z3) in 0..7
  std::array<std::uint32_t, 4> c{};
  for (c[0] = 0; c[0] < 8; ++c[0])
    for (c[1] = c[0]; c[1] < 8; ++c[1])
      for (c[2] = c[1]; c[2] < 8; ++c[2])
        for (c[3] = c[2]; c[3] < 8; ++c[3]) {
          std::vector<std::uint32_t> distinct;
          for (auto col : c)
            if (distinct.empty() || distinct.back() != col) distinct.push_back(col);

          // A[theta][Ua*9+Ub] = 16-bit mask of valid desired tables D_theta,
          // where (Ua, Ub) are the undesired effective encoders of the other
          // two transmitters in increasing index order.
          std::array<std::array<std::uint16_t, 81>, 3> A;
          for (int pos = 0; pos < 3; ++pos) {
            const int oa = kOthers[pos][0], ob = kOthers[pos][1];
            for (int ua = 0; ua < 9; ++ua)
              for (int ub = 0; ub < 9; ++ub) {
                std::uint16_t mask = 0;
                for (int D = 0; D < 16; ++D) {
                  bool ok = true;
                  for (auto color : distinct) {
                    const int z[3] = {static_cast<int>(color >> 2),
                                      static_cast<int>((color >> 1) & 1),
                                      static_cast<int>(color & 1)};
                    const int col = (z[pos] == 0) ? (D >> 2) : (D & 3);
                    const int ma = (z[oa] == 0) ? (ua / 3 + 1) : (ua % 3 + 1);
                    const int mb = (z[ob] == 0) ? (ub / 3 + 1) : (ub % 3 + 1);
                    if (!Ok[pos][col][ma - 1][mb - 1]) {
                      ok = false;
                      break;
                    }
                  }
                  if (ok) mask |= static_cast<std::uint16_t>(1u << D);
                }
                A[pos][ua * 9 + ub] = mask;
              }
          }

          for (int u1 = 0; u1 < 9; ++u1)
            for (int u2 = 0; u2 < 9; ++u2) {
              const std::uint16_t m3base = A[2][u1 * 9 + u2];
              if (!m3base) continue;
              for (int u3 = 0; u3 < 9; ++u3) {
                const std::uint16_t m1 = A[0][u2 * 9 + u3];
                if (!m1) continue;
                const std::uint16_t m2 = A[1][u1 * 9 + u3];
                if (!m2) continue;
                const int u[3] = {u1, u2, u3};
                for (int D1 = 0; D1 < 16; ++D1) {
                  if (!(m1 & (1 << D1))) continue;
                  for (int D2 = 0; D2 < 16; ++D2) {
                    if (!(m2 & (1 << D2))) continue;
                    for (int D3 = 0; D3 < 16; ++D3) {
                      if (!(m3base & (1 << D3))) continue;
                      const int D[3] = {D1, D2, D3};
                      // exact transcript counts per theta (total 32 each)
                      std::uint32_t counts[3][8] = {};
                      for (int theta = 0; theta < 3; ++theta)
                        for (auto color : c) {
                          const int z[3] = {static_cast<int>(color >> 2),
                                            static_cast<int>((color >> 1) & 1),
                                            static_cast<int>(color & 1)};
                          // per-coordinate (value, weight) pairs, weights sum 2
                          int vals[3][2], wts[3][2], nv[3];
                          for (int j = 0; j < 3; ++j) {
                            if (j == theta) {
                              const int col =
                                  (z[j] == 0) ? (D[j] >> 2) : (D[j] & 3);
                              const int v0 = col >> 1, v1 = col & 1;
                              if (v0 == v1) {
                                nv[j] = 1;
                                vals[j][0] = v0;
                                wts[j][0] = 2;
                              } else {
                                nv[j] = 2;
                                vals[j][0] = v0;
                                wts[j][0] = 1;
                                vals[j][1] = v1;
                                wts[j][1] = 1;
                              }
                            } else {
                              const int m =
                                  (z[j] == 0) ? (u[j] / 3 + 1) : (u[j] % 3 + 1);
                              if (m == 3) {
                                nv[j] = 2;
                                vals[j][0] = 0;
                                wts[j][0] = 1;
                                vals[j][1] = 1;
                                wts[j][1] = 1;
                              } else {
                                nv[j] = 1;
                                vals[j][0] = (m == 2) ? 1 : 0;
                                wts[j][0] = 2;
                              }
                            }
                          }
                          for (int a = 0; a < nv[0]; ++a)
                            for (int b = 0; b < nv[1]; ++b)
                              for (int e = 0; e < nv[2]; ++e)
                                counts[theta][vals[0][a] * 4 + vals[1][b] * 2 +
                                              vals[2][e]] +=
                                    wts[0][a] * wts[1][b] * wts[2][e];
                        }
                      bool anon = true;
                      for (int theta = 1; theta < 3 && anon; ++theta)
                        for (int t = 0; t < 8; ++t)
                          if (counts[0][t] != counts[theta][t]) {
                            anon = false;
                            break;
                          }
                      if (anon) {
                        ++out.accepted_classes;
                        out.accepted = true;
                      }
                    }
                  }
                }
              }
            }
        }
  return out;
}

}  // namespace census_detail

inline DecoderCensus forced_decoder_census(unsigned workers = 1) {
  detail::Stopwatch sw;
  DecoderCensus census;
  // raw space: decoder 2^8, per transmitter 2^4 share map x (2^4)^2 encoders
  census.nominal_space = 256ull * 4096ull * 4096ull * 4096ull;

  std::vector<census_detail::PerDecoder> per(256);
  workers = std::max(1u, workers);
  std::vector<std::thread> threads;
  std::atomic<std::uint32_t> next{0};
  for (unsigned wk = 0; wk < workers; ++wk)
    threads.emplace_back([&] {
      for (;;) {
        const std::uint32_t gbits = next.fetch_add(1);
        if (gbits >= 256) return;
        per[gbits] = census_detail::scan_decoder(gbits);
      }
    });
  for (auto& t : threads) t.join();

  for (std::uint32_t gbits = 0; gbits < 256; ++gbits) {
    census.classes_examined += 330;  // colorings per decoder
    if (!per[gbits].accepted) continue;
    census.accepted_classes += per[gbits].accepted_classes;
    std::vector<std::uint32_t> g(8);
    for (std::uint32_t t = 0; t < 8; ++t) g[t] = (gbits >> t) & 1u;
    census.accepted_decoders.insert(g);
    if (!census_detail::latin(g)) census.all_latin = false;
    if (!census_detail::parity_up_to_constant(g))
      census.all_match_addition_up_to_constant = false;
    if (census_detail::parity_up_to_constant(g) && g[0] == 0)
      census.addition_decoder_present = true;
  }
  census.elapsed_seconds = sw.seconds();
  return census;
}

}  // namespace anoncomm

#endif  // ANONCOMM_CENSUS_HPP
