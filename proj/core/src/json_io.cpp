#include "ulim/json_io.hpp"

#include <json.hpp>

namespace ulim {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json app_node(const RuleApp& app) {
  ordered_json j;
  j["rule"] = std::string(rule_name(app.rule));
  j["conclusion"] = app.conclusion.text();
  ordered_json prems = ordered_json::array();
  for (const Sequent& p : app.premises) prems.push_back(p.text());
  j["premises"] = std::move(prems);
  ordered_json flags = ordered_json::array();
  for (std::uint8_t c : app.contextual) flags.push_back(c != 0);
  j["contextual"] = std::move(flags);
  return j;
}

ordered_json deriv_node(const DerivationPtr& d) {
  ordered_json j;
  j["rule"] = std::string(rule_name(d->rule));
  j["conclusion"] = d->seq.text();
  ordered_json prems = ordered_json::array();
  for (const DerivationPtr& c : d->children) prems.push_back(deriv_node(c));
  j["premises"] = std::move(prems);
  return j;
}

DerivationPtr node_from(const ordered_json& j) {
  if (!j.is_object() || !j.contains("rule") || !j.contains("conclusion") ||
      !j.contains("premises"))
    throw ParseError("derivation node needs rule, conclusion and premises", 0);
  std::optional<RuleId> rule = rule_from_name(j["rule"].get<std::string>());
  if (!rule)
    throw ParseError("unknown rule name '" + j["rule"].get<std::string>() + "'",
                     0);
  auto node = std::make_shared<Derivation>();
  node->rule = *rule;
  node->seq = parse_sequent(j["conclusion"].get<std::string>());
  for (const ordered_json& c : j["premises"])
    node->children.push_back(node_from(c));
  return node;
}

}  // namespace

std::string rule_app_json(const RuleApp& app) { return app_node(app).dump(); }

std::string derivation_json(const DerivationPtr& d) {
  if (!d) throw InternalError("cannot serialize an empty derivation");
  return deriv_node(d).dump();
}

DerivationPtr derivation_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("not a JSON document", 0);
  try {
    return node_from(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed derivation: ") + e.what(), 0);
  }
}

}  // namespace ulim
