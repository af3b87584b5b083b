#pragma once

// JSON snapshots of fitted models. Trees are written as nested nodes and
// the training configuration is echoed next to them.

#include "json.hpp"
#include "stsb/grid.hpp"

namespace stsb {

nlohmann::json to_json(const RegressionTree& tree);
RegressionTree tree_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const TreeEnsemble& model);
TreeEnsemble ensemble_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const AdaBoostModel& model);
AdaBoostModel adaboost_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const StackingModel& model);
StackingModel stacking_from_json(const nlohmann::json& doc);

}  // namespace stsb
