#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <map>

#include "anoncomm/census.hpp"
#include "anoncomm/search.hpp"
#include "anoncomm/verifier.hpp"

using namespace anoncomm;

namespace {

/// Independent oracle for the scalar linear model at K=2, p=2, seed_dim=1:
/// loop the nine coefficients directly and test correctness plus exact
/// transcript-distribution equality with straightforward nested loops,
/// sharing no code with the search module.
std::uint64_t linear_k2_oracle_count() {
  std::uint64_t valid = 0;
  for (int g1 = 0; g1 < 2; ++g1)
  for (int g2 = 0; g2 < 2; ++g2)
  for (int v1 = 0; v1 < 2; ++v1)
  for (int v2 = 0; v2 < 2; ++v2)
  for (int ud1 = 0; ud1 < 2; ++ud1)
  for (int ud2 = 0; ud2 < 2; ++ud2)
  for (int uu1 = 0; uu1 < 2; ++uu1)
  for (int uu2 = 0; uu2 < 2; ++uu2)
  for (int m1 = 0; m1 < 2; ++m1)
  for (int m2 = 0; m2 < 2; ++m2) {
    auto x1 = [&](int theta, int a, int w) {
      const int z = (m1 * a) % 2;
      return theta == 1 ? (v1 * w + ud1 * z) % 2 : (uu1 * z) % 2;
    };
    auto x2 = [&](int theta, int a, int w) {
      const int z = (m2 * a) % 2;
      return theta == 2 ? (v2 * w + ud2 * z) % 2 : (uu2 * z) % 2;
    };
    bool correct = true;
    for (int theta = 1; theta <= 2 && correct; ++theta)
      for (int a = 0; a < 2 && correct; ++a)
        for (int w1 = 0; w1 < 2 && correct; ++w1)
          for (int w2 = 0; w2 < 2 && correct; ++w2) {
            const int y = (g1 * x1(theta, a, w1) + g2 * x2(theta, a, w2)) % 2;
            if (y != (theta == 1 ? w1 : w2)) correct = false;
          }
    if (!correct) continue;
    std::map<std::pair<int, int>, int> c1, c2;
    for (int a = 0; a < 2; ++a)
      for (int w1 = 0; w1 < 2; ++w1)
        for (int w2 = 0; w2 < 2; ++w2) {
          ++c1[{x1(1, a, w1), x2(1, a, w2)}];
          ++c2[{x1(2, a, w1), x2(2, a, w2)}];
        }
    if (c1 == c2) ++valid;
  }
  return valid;
}

}  // namespace

TEST_CASE("linear search at K=2 matches the independent oracle") {
  const SchemeParams params{2, 2, 1, 1};
  const SearchResult r0 = search_linear(params, 0);
  CHECK(r0.valid_schemes_found == 0);
  CHECK(r0.candidates_visited == r0.space_size);

  const SearchResult r1 = search_linear(params, 1);
  CHECK(r1.space_size == 1024);
  CHECK(r1.candidates_visited == 1024);
  CHECK(r1.valid_schemes_found == linear_k2_oracle_count());
  CHECK(r1.valid_schemes_found > 0);
  CHECK(r1.min_rho == Rational(1, 1));
  CHECK(r1.min_eta == Rational(1, 1));
  CHECK(r1.all_individual_shares_full_entropy);
  CHECK(r1.all_joint_shares_rank_deficient);
}

TEST_CASE("accepted candidates pass the full property verifier") {
  for (const SchemeModel model : {SchemeModel::linear, SchemeModel::general}) {
    SearchOptions opt;
    opt.stop_at_first = true;
    const SearchResult r = search(model, SchemeParams{2, 2, 1, 1}, 1, opt);
    REQUIRE(r.first_witness.has_value());
    const DescribedScheme scheme(*r.first_witness);
    CHECK(check_correctness(scheme).verdict == Verdict::pass);
    CHECK(check_anonymity(scheme).verdict == Verdict::pass);
    CHECK(check_security(scheme).verdict == Verdict::pass);
  }
}

TEST_CASE("stop_at_first halts early with exactly one find") {
  SearchOptions opt;
  opt.stop_at_first = true;
  const SearchResult r = search_linear(SchemeParams{3, 2, 1, 1}, 2, opt);
  CHECK(r.valid_schemes_found == 1);
  CHECK(r.candidates_visited < r.space_size);
}

TEST_CASE("minimal seed dimension is K-1 for the linear model") {
  CHECK(min_seed_dimension(SchemeModel::linear, SchemeParams{2, 2, 1, 1}) == 1);
  CHECK(min_seed_dimension(SchemeModel::linear, SchemeParams{3, 2, 1, 1}) == 2);
  CHECK(min_seed_dimension(SchemeModel::linear, SchemeParams{2, 3, 1, 1}) == 1);
}

TEST_CASE("linear K=3 searches: nothing below K-1 seed symbols") {
  const SchemeParams params{3, 2, 1, 1};
  CHECK(search_linear(params, 0).valid_schemes_found == 0);
  CHECK(search_linear(params, 1).valid_schemes_found == 0);
  const SearchResult r2 = search_linear(params, 2);
  CHECK(r2.valid_schemes_found > 0);
  CHECK(r2.min_eta == Rational(2, 1));
  CHECK(r2.all_individual_shares_full_entropy);
  CHECK(r2.all_joint_shares_rank_deficient);
}

TEST_CASE("coded randomness is necessary at the minimal seed dimension") {
  const CodedRandomnessReport k3 =
      check_coded_randomness_necessity(SchemeParams{3, 2, 1, 1});
  CHECK(k3.seed_dim == 2);
  CHECK(k3.valid_schemes > 0);
  CHECK(k3.uncoded_valid_schemes == 0);
  CHECK(k3.necessity);
}

TEST_CASE("uncoded mixing predicate") {
  CHECK(search_detail::mix_is_uncoded({{1, 0}, {0, 1}}));
  CHECK_FALSE(search_detail::mix_is_uncoded({{1, 1}, {0, 1}}));  // mixed row
  CHECK_FALSE(search_detail::mix_is_uncoded({{1, 0}, {1, 0}}));  // reused symbol
  CHECK_FALSE(search_detail::mix_is_uncoded({{0, 0}, {0, 1}}));  // constant share
}

TEST_CASE("general search at seed_dim 0 finds nothing; workers agree") {
  const SchemeParams params{2, 2, 1, 1};
  const SearchResult seq = search_general(params, 0);
  CHECK(seq.space_size == 4194304);
  CHECK(seq.valid_schemes_found == 0);
  SearchOptions par;
  par.workers = 3;
  const SearchResult r = search_general(params, 0, par);
  CHECK(r.valid_schemes_found == seq.valid_schemes_found);
  CHECK(r.candidates_visited == seq.candidates_visited);
}

TEST_CASE("checkpointed searches skip recorded ranges on restart") {
  const std::string path = "checkpoint_test.txt";
  std::remove(path.c_str());
  SearchOptions opt;
  opt.checkpoint_path = path;
  opt.checkpoint_chunk = 1u << 20;
  const SchemeParams params{2, 2, 1, 1};
  const SearchResult first = search_general(params, 0, opt);
  CHECK(first.candidates_visited == first.space_size);
  const SearchResult second = search_general(params, 0, opt);
  CHECK(second.candidates_visited == 0);  // everything already recorded
  std::remove(path.c_str());
}

TEST_CASE("search refuses infeasible spaces with the required size") {
  try {
    search_general(SchemeParams{3, 2, 1, 1}, 2);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    CHECK(e.required_states > kDefaultStateCap);
  }
}

TEST_CASE("no linear scheme fits two message symbols into one channel use") {
  CHECK(check_rate_infeasible(SchemeParams{2, 2, 2, 1}));
  CHECK(check_rate_infeasible(SchemeParams{3, 2, 2, 1}));
  CHECK(check_rate_infeasible(SchemeParams{2, 3, 2, 1}));
  CHECK_THROWS_AS(check_rate_infeasible(SchemeParams{2, 2, 1, 1}), Error);
}

TEST_CASE("decoder census: only addition-up-to-a-constant survives at K=3, p=2") {
  const DecoderCensus census = forced_decoder_census(1);
  CHECK(census.classes_examined > 0);
  CHECK(census.accepted_classes > 0);
  CHECK(census.all_latin);
  CHECK(census.all_match_addition_up_to_constant);
  CHECK(census.addition_decoder_present);
  // parity and its complement, written as truth tables over (y1,y2,y3)
  const std::set<std::vector<std::uint32_t>> expected{
      {0, 1, 1, 0, 1, 0, 0, 1}, {1, 0, 0, 1, 0, 1, 1, 0}};
  CHECK(census.accepted_decoders == expected);
}
