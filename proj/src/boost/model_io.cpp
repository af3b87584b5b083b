#include "stsb/model_io.hpp"

#include "stsb/errors.hpp"

namespace stsb {

using json = nlohmann::json;

namespace {

json node_json(const std::vector<TreeNode>& nodes, int i) {
  const auto& n = nodes[i];
  if (n.is_leaf()) return json{{"leaf", n.value}};
  return json{{"feature", n.feature},
              {"threshold", n.threshold},
              {"value", n.value},
              {"left", node_json(nodes, n.left)},
              {"right", node_json(nodes, n.right)}};
}

int read_node(const json& doc, std::vector<TreeNode>& nodes) {
  const int index = static_cast<int>(nodes.size());
  nodes.emplace_back();
  if (doc.contains("leaf")) {
    nodes[index].value = doc.at("leaf").get<double>();
    return index;
  }
  nodes[index].feature = doc.at("feature").get<int>();
  nodes[index].threshold = doc.at("threshold").get<double>();
  nodes[index].value = doc.value("value", 0.0);
  if (nodes[index].feature < 0) throw ValidationError("tree node with negative feature index");
  const int l = read_node(doc.at("left"), nodes);
  const int r = read_node(doc.at("right"), nodes);
  nodes[index].left = l;
  nodes[index].right = r;
  return index;
}

json gbdt_config_json(const GbdtConfig& c) {
  return json{{"n_trees", c.n_trees},
              {"max_depth", c.max_depth},
              {"shrinkage", c.shrinkage},
              {"min_samples_leaf", c.min_samples_leaf},
              {"histogram_bins", c.histogram_bins},
              {"goss_top_fraction", c.goss_top_fraction},
              {"goss_other_fraction", c.goss_other_fraction},
              {"seed", c.seed},
              {"loss", std::string(to_string(c.loss))}};
}

GbdtConfig gbdt_config_from_json(const json& doc) {
  GbdtConfig c;
  c.n_trees = doc.at("n_trees").get<std::size_t>();
  c.max_depth = doc.at("max_depth").get<int>();
  c.shrinkage = doc.at("shrinkage").get<double>();
  c.min_samples_leaf = doc.at("min_samples_leaf").get<std::size_t>();
  c.histogram_bins = doc.at("histogram_bins").get<std::size_t>();
  c.goss_top_fraction = doc.at("goss_top_fraction").get<double>();
  c.goss_other_fraction = doc.at("goss_other_fraction").get<double>();
  c.seed = doc.at("seed").get<std::uint64_t>();
  c.loss = parse_loss(doc.at("loss").get<std::string>());
  return c;
}

json ada_config_json(const AdaBoostConfig& c) {
  return json{{"rounds", c.rounds},
              {"loss", std::string(to_string(c.loss))},
              {"max_depth", c.max_depth},
              {"min_samples_leaf", c.min_samples_leaf},
              {"histogram_bins", c.histogram_bins},
              {"seed", c.seed}};
}

AdaBoostConfig ada_config_from_json(const json& doc) {
  AdaBoostConfig c;
  c.rounds = doc.at("rounds").get<std::size_t>();
  c.loss = parse_ada_loss(doc.at("loss").get<std::string>());
  c.max_depth = doc.at("max_depth").get<int>();
  c.min_samples_leaf = doc.at("min_samples_leaf").get<std::size_t>();
  c.histogram_bins = doc.at("histogram_bins").get<std::size_t>();
  c.seed = doc.at("seed").get<std::uint64_t>();
  return c;
}

}  // namespace

json to_json(const RegressionTree& tree) {
  if (tree.nodes().empty()) return json{{"leaf", 0.0}};
  return node_json(tree.nodes(), 0);
}

RegressionTree tree_from_json(const json& doc) {
  std::vector<TreeNode> nodes;
  read_node(doc, nodes);
  return RegressionTree(std::move(nodes));
}

json to_json(const TreeEnsemble& model) {
  json trees = json::array();
  for (const auto& t : model.trees) trees.push_back(to_json(t));
  return json{{"kind", "gbdt"},
              {"base_prediction", model.base_prediction},
              {"shrinkage", model.shrinkage},
              {"loss", std::string(to_string(model.loss))},
              {"link", model.loss == Loss::squared ? "identity" : "logistic"},
              {"config", gbdt_config_json(model.config)},
              {"trees", std::move(trees)}};
}

TreeEnsemble ensemble_from_json(const json& doc) {
  TreeEnsemble m;
  m.base_prediction = doc.at("base_prediction").get<double>();
  m.shrinkage = doc.at("shrinkage").get<double>();
  m.loss = parse_loss(doc.at("loss").get<std::string>());
  m.config = gbdt_config_from_json(doc.at("config"));
  for (const auto& t : doc.at("trees")) m.trees.push_back(tree_from_json(t));
  return m;
}

json to_json(const AdaBoostModel& model) {
  json learners = json::array();
  for (const auto& t : model.learners) learners.push_back(to_json(t));
  return json{{"kind", "adaboost_r2"},
              {"loss", std::string(to_string(model.loss_kind))},
              {"learner_weights", model.learner_weights},
              {"config", ada_config_json(model.config)},
              {"learners", std::move(learners)}};
}

AdaBoostModel adaboost_from_json(const json& doc) {
  AdaBoostModel m;
  m.loss_kind = parse_ada_loss(doc.at("loss").get<std::string>());
  m.learner_weights = doc.at("learner_weights").get<std::vector<double>>();
  m.config = ada_config_from_json(doc.at("config"));
  for (const auto& t : doc.at("learners")) m.learners.push_back(tree_from_json(t));
  if (m.learners.size() != m.learner_weights.size()) {
    throw ValidationError("AdaBoost snapshot has mismatched learner and weight counts");
  }
  return m;
}

json to_json(const StackingModel& model) {
  json doc{{"algorithm", std::string(to_string(model.algorithm))},
           {"models", model.models},
           {"columns", model.column_names},
           {"label_range", std::string(to_string(model.label_range))},
           {"target_scale", model.target_scale}};
  doc["fitted"] = std::visit([](const auto& f) { return to_json(f); }, model.fitted);
  return doc;
}

StackingModel stacking_from_json(const json& doc) {
  try {
    StackingModel m;
    m.algorithm = parse_algorithm(doc.at("algorithm").get<std::string>());
    m.models = doc.at("models").get<std::vector<std::string>>();
    m.column_names = doc.at("columns").get<std::vector<std::string>>();
    m.label_range = parse_label_range(doc.at("label_range").get<std::string>());
    m.target_scale = doc.at("target_scale").get<double>();
    const auto& fitted = doc.at("fitted");
    if (fitted.at("kind") == "adaboost_r2") {
      m.fitted = adaboost_from_json(fitted);
    } else {
      m.fitted = ensemble_from_json(fitted);
    }
    return m;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed model snapshot: ") + e.what());
  }
}

}  // namespace stsb
