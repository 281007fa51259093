#ifndef ANONCOMM_REPORT_HPP
#define ANONCOMM_REPORT_HPP

#include <string>

#include "json.hpp"

#include "anoncomm/census.hpp"
#include "anoncomm/protocol.hpp"
#include "anoncomm/search.hpp"
#include "anoncomm/verifier.hpp"

namespace anoncomm {

using json = nlohmann::ordered_json;

/// Numeric report fields always carry units and an exact rational form where
/// one exists, so bits never get confused with p-ary units downstream.
inline json rational_field(const Rational& r, const std::string& units) {
  return json{{"value", r.to_double()}, {"rational", r.str()}, {"units", units}};
}

inline json params_json(const SchemeParams& p) {
  return json{{"K", p.K}, {"p", p.p}, {"L", p.L}, {"N", p.N}};
}

inline json to_json(const CheckReport& rep) {
  json j;
  j["check"] = rep.check_name;
  j["params"] = params_json(rep.params);
  j["verdict"] = to_string(rep.verdict);
  if (rep.witness) {
    json w;
    w["description"] = rep.witness->description;
    for (const auto& [k, v] : rep.witness->details) w[k] = v;
    j["witness"] = w;
  }
  j["states_enumerated"] = rep.states_enumerated;
  j["wall_seconds"] = rep.wall_seconds;
  for (const auto& [k, v] : rep.info) j[k] = v;
  return j;
}

inline json to_json(const SchemeMetrics& m) {
  json j;
  j["rate"] = rational_field(m.rate, "symbols-per-channel-use");
  j["rho"] = rational_field(m.rho, "p-ary-units");
  j["eta"] = rational_field(m.eta, "p-ary-units");
  return j;
}

inline json to_json(const SchemeDescription& d) {
  json j;
  j["model"] = to_string(d.model);
  j["params"] = params_json(d.params);
  j["seed_dim"] = d.seed_dim;
  j["candidate_index"] = d.candidate_index;
  if (d.general) {
    j["share_maps"] = d.general->share_map;
    j["encoders_desired"] = d.general->enc_desired;
    j["encoders_undesired"] = d.general->enc_undesired;
    j["decoder_table"] = d.general->decoder;
  }
  if (d.linear) {
    j["mix"] = d.linear->mix;
    j["v_desired"] = d.linear->v_desired;
    j["u_desired"] = d.linear->u_desired;
    j["u_undesired"] = d.linear->u_undesired;
    j["g"] = d.linear->g;
  }
  return j;
}

inline json to_json(const SearchResult& r) {
  json j;
  j["model"] = to_string(r.model);
  j["params"] = params_json(r.params);
  j["seed_dim"] = r.seed_dim;
  j["space_size"] = r.space_size;
  j["candidates_visited"] = r.candidates_visited;
  j["valid_schemes_found"] = r.valid_schemes_found;
  if (r.first_witness) j["first_witness"] = to_json(*r.first_witness);
  if (r.min_rho) j["min_rho"] = rational_field(*r.min_rho, "p-ary-units");
  if (r.min_eta) j["min_eta"] = rational_field(*r.min_eta, "p-ary-units");
  j["all_individual_shares_full_entropy"] = r.all_individual_shares_full_entropy;
  j["all_joint_shares_rank_deficient"] = r.all_joint_shares_rank_deficient;
  j["wall_seconds"] = r.elapsed_seconds;
  return j;
}

inline json to_json(const DecoderCensus& c) {
  json j;
  j["nominal_space"] = c.nominal_space;
  j["classes_examined"] = c.classes_examined;
  j["accepted_classes"] = c.accepted_classes;
  j["distinct_accepted_decoders"] = c.accepted_decoders.size();
  json decoders = json::array();
  for (const auto& g : c.accepted_decoders) decoders.push_back(g);
  j["accepted_decoder_tables"] = decoders;
  j["addition_decoder_present"] = c.addition_decoder_present;
  j["all_latin"] = c.all_latin;
  j["all_match_addition_up_to_constant"] = c.all_match_addition_up_to_constant;
  j["wall_seconds"] = c.elapsed_seconds;
  return j;
}

}  // namespace anoncomm

#endif  // ANONCOMM_REPORT_HPP
