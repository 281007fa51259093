#include <catch2/catch_amalgamated.hpp>

#include "anoncomm/verifier.hpp"

using namespace anoncomm;

namespace {

CheckReport find_report(const std::vector<CheckReport>& reports,
                        const std::string& name) {
  for (const auto& r : reports)
    if (r.check_name == name) return r;
  FAIL("missing report " + name);
  return {};
}

}  // namespace

TEST_CASE("reference scheme passes every check on a small grid") {
  for (const SchemeParams& params :
       {SchemeParams{2, 2, 1, 1}, SchemeParams{2, 3, 1, 1}, SchemeParams{3, 2, 1, 1},
        SchemeParams{3, 3, 1, 1}, SchemeParams{2, 2, 2, 2}, SchemeParams{4, 2, 1, 1}}) {
    const AdditionScheme scheme(params);
    for (const auto& rep : run_all_checks(scheme)) {
      INFO(rep.check_name << " at K=" << params.K << " p=" << params.p
                          << " L=" << params.L);
      CHECK(rep.verdict != Verdict::fail);
      CHECK_FALSE(rep.witness.has_value());
    }
  }
}

TEST_CASE("run_all_checks covers every admissible colluder subset") {
  const AdditionScheme scheme(SchemeParams{4, 2, 1, 1});
  const auto reports = run_all_checks(scheme);
  std::size_t collusion_reports = 0;
  for (const auto& r : reports)
    if (r.check_name == "collusion") ++collusion_reports;
  // subsets of {1..4} with size <= 2: 1 + 4 + 6
  CHECK(collusion_reports == 11);
  CHECK(reports.size() == 3 + 11 + 3);
}

TEST_CASE("anonymity report carries a decoder hash") {
  const AdditionScheme scheme(SchemeParams{3, 2, 1, 1});
  const CheckReport rep = check_anonymity(scheme);
  CHECK(rep.verdict == Verdict::pass);
  REQUIRE(rep.info.count("decoder_hash") == 1);
  CHECK(rep.info.at("decoder_hash") != "n/a");
  CHECK(rep.states_enumerated > 0);
}

TEST_CASE("dropped-signal decoder fails correctness with a localized witness") {
  const DroppedSignalDecoderScheme mutant(SchemeParams{3, 2, 1, 1});
  const CheckReport rep = check_correctness(mutant);
  REQUIRE(rep.verdict == Verdict::fail);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->details.count("theta") == 1);
  CHECK(rep.witness->details.count("seed_index") == 1);
  CHECK(rep.witness->details.count("expected") == 1);
  CHECK(rep.witness->details.count("decoded") == 1);
}

TEST_CASE("unmasked sending fails anonymity and uniformity, with a counterexample") {
  const NaiveUnmaskedScheme mutant(SchemeParams{3, 2, 1, 1});
  CHECK(check_correctness(mutant).verdict == Verdict::pass);  // it does decode
  const CheckReport anon = check_anonymity(mutant);
  REQUIRE(anon.verdict == Verdict::fail);
  REQUIRE(anon.witness.has_value());
  CHECK(anon.witness->details.count("transcript") == 1);
  CHECK(check_transcript_uniform(mutant).verdict == Verdict::fail);
}

TEST_CASE("leaking an undesired message fails security and share determinism") {
  const LeakyUndesiredScheme mutant(SchemeParams{3, 2, 1, 1});
  const CheckReport sec = check_security(mutant);
  REQUIRE(sec.verdict == Verdict::fail);
  REQUIRE(sec.witness.has_value());
  CHECK(sec.witness->details.count("theta") == 1);
  const CheckReport det = check_share_determinism(mutant);
  REQUIRE(det.verdict == Verdict::fail);
  CHECK(det.witness->details.at("transmitter") == "2");
}

TEST_CASE("all-zero signalling collapses the transcript to a point mass") {
  const PointMassScheme mutant(SchemeParams{3, 2, 1, 1});
  CHECK(check_correctness(mutant).verdict == Verdict::fail);
  // every theta yields the same degenerate distribution: anonymity holds...
  CHECK(check_anonymity(mutant).verdict == Verdict::pass);
  // ...but uniformity pins it down
  const CheckReport rep = check_transcript_uniform(mutant);
  REQUIRE(rep.verdict == Verdict::fail);
  CHECK(rep.witness->details.at("support") == "1");
}

TEST_CASE("constant decoder fails the single-coordinate-change property") {
  const ConstantDecoderScheme mutant(SchemeParams{3, 2, 1, 1});
  const CheckReport rep = check_decoder_latin_structure(mutant);
  REQUIRE(rep.verdict == Verdict::fail);
  CHECK(rep.witness->details.count("cell_a") == 1);
  CHECK(rep.witness->details.count("cell_b") == 1);
}

TEST_CASE("decoder structure check is skipped for vector messages") {
  const AdditionScheme scheme(SchemeParams{2, 2, 2, 2});
  const CheckReport rep = check_decoder_latin_structure(scheme);
  CHECK(rep.verdict == Verdict::skipped);
  CHECK(rep.info.count("reason") == 1);
}

TEST_CASE("collusion guardrails") {
  const AdditionScheme k3(SchemeParams{3, 2, 1, 1});
  CHECK_THROWS_AS(check_collusion(k3, {1, 2}), Error);   // size K-1 > K-2
  CHECK_THROWS_AS(check_collusion(k3, {7}), Error);      // out of range
  CHECK(check_collusion(k3, {2}).verdict == Verdict::pass);
}

TEST_CASE("checks refuse to exceed the state cap and report the required size") {
  const AdditionScheme scheme(SchemeParams{3, 2, 1, 1});
  try {
    check_correctness(scheme, 10);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    // 4 seeds * 8 message tuples * 3 thetas
    CHECK(e.required_states == 96);
    CHECK(e.cap == 10);
  }
  CHECK_THROWS_AS(check_anonymity(scheme, 10), CapExceeded);
  CHECK_THROWS_AS(check_security(scheme, 10), CapExceeded);
  CHECK_THROWS_AS(check_transcript_uniform(scheme, 10), CapExceeded);
}

TEST_CASE("mutant factory knows its catalogue") {
  const SchemeParams params{3, 2, 1, 1};
  for (const char* name : {"dropped-signal-decoder", "naive-unmasked",
                           "leaky-undesired", "point-mass", "constant-decoder"}) {
    const auto m = make_mutant(name, params);
    CHECK(m->name() == std::string("mutant-") + name);
  }
  CHECK_THROWS_AS(make_mutant("no-such-mutant", params), Error);
}

TEST_CASE("find_report helper sanity") {
  const AdditionScheme scheme(SchemeParams{2, 2, 1, 1});
  const auto reports = run_all_checks(scheme);
  CHECK(find_report(reports, "correctness").check_name == "correctness");
}
