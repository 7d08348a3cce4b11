#pragma once

#include <cstddef>
#include <vector>

#include "atlir/icgs.hpp"

namespace atlir::detail {

// Mixed-radix numbering of the group actions of a coalition in one state,
// first member most significant, so increasing index means increasing
// GroupAction.
class GroupIndex {
 public:
  GroupIndex(const Icgs& model, const Coalition& coalition, StateId q)
      : model_(&model), coalition_(&coalition), state_(q) {
    const auto members = coalition.members();
    strides_.resize(members.size());
    for (std::size_t i = members.size(); i > 0; --i) {
      strides_[i - 1] = count_;
      count_ *= model.protocol(members[i - 1], q).size();
    }
  }

  std::size_t count() const { return count_; }

  std::size_t of_joint(std::size_t j) const {
    const auto members = coalition_->members();
    std::size_t g = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      g += model_->joint_position(state_, j, members[i]) * strides_[i];
    }
    return g;
  }

  GroupAction action(std::size_t g) const {
    const auto members = coalition_->members();
    std::vector<ActionId> picks(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      const auto row = model_->protocol(members[i], state_);
      picks[i] = row[(g / strides_[i]) % row.size()];
    }
    return GroupAction(picks);
  }

 private:
  const Icgs* model_;
  const Coalition* coalition_;
  StateId state_;
  std::size_t count_ = 1;
  std::vector<std::size_t> strides_;
};

}  // namespace atlir::detail
