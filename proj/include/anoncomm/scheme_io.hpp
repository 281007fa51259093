#ifndef ANONCOMM_SCHEME_IO_HPP
#define ANONCOMM_SCHEME_IO_HPP

#include <fstream>
#include <memory>
#include <string>

#include "json.hpp"

#include "anoncomm/scheme.hpp"
#include "anoncomm/search.hpp"

namespace anoncomm {

/// Load a scheme from a .scheme JSON file. Three forms are accepted:
///   {"model": "builtin"}                       the addition scheme
///   {"model": "mutant", "name": "<mutant>"}    a catalogued mutant
///   {"model": "general"|"linear", ...}         a full SchemeDescription,
///                                              fields as emitted by the
///                                              search reports
/// `params` supplies K/p/L/N for builtin and mutant forms; description files
/// carry their own parameters.
inline std::unique_ptr<Scheme> load_scheme(const std::string& path,
                                           const SchemeParams& params) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scheme file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed scheme file " + path + ": " + e.what());
  }
  const std::string model = j.value("model", "");
  if (model == "builtin") return std::make_unique<AdditionScheme>(params);
  if (model == "mutant") return make_mutant(j.at("name").get<std::string>(), params);
  if (model == "general" || model == "linear") {
    SchemeDescription desc;
    desc.model = model == "general" ? SchemeModel::general : SchemeModel::linear;
    const auto& pj = j.at("params");
    desc.params.K = pj.at("K").get<std::uint32_t>();
    desc.params.p = pj.at("p").get<std::uint32_t>();
    desc.params.L = pj.value("L", 1u);
    desc.params.N = pj.value("N", 1u);
    desc.seed_dim = j.at("seed_dim").get<std::uint32_t>();
    if (desc.model == SchemeModel::general) {
      GeneralTables gt;
      gt.share_map = j.at("share_maps").get<std::vector<std::vector<std::uint32_t>>>();
      gt.enc_desired =
          j.at("encoders_desired").get<std::vector<std::vector<std::uint32_t>>>();
      gt.enc_undesired =
          j.at("encoders_undesired").get<std::vector<std::vector<std::uint32_t>>>();
      gt.decoder = j.at("decoder_table").get<std::vector<std::uint32_t>>();
      desc.general = std::move(gt);
    } else {
      LinearCoeffs lc;
      lc.mix = j.at("mix").get<std::vector<std::vector<std::uint32_t>>>();
      lc.v_desired = j.at("v_desired").get<std::vector<std::uint32_t>>();
      lc.u_desired = j.at("u_desired").get<std::vector<std::uint32_t>>();
      lc.u_undesired = j.at("u_undesired").get<std::vector<std::uint32_t>>();
      lc.g = j.at("g").get<std::vector<std::uint32_t>>();
      desc.linear = std::move(lc);
    }
    return std::make_unique<DescribedScheme>(std::move(desc));
  }
  throw Error("scheme file " + path + ": unknown model '" + model + "'");
}

}  // namespace anoncomm

#endif  // ANONCOMM_SCHEME_IO_HPP
