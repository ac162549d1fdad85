#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "qrelay/errors.hpp"

namespace qrelay {

struct Subsystem {
  std::string label;
  Eigen::Index dim = 0;

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

// Ordered list of labeled tensor factors. Order is significant everywhere:
// index i of a vector on this shape decomposes into mixed-radix digits with
// the first subsystem most significant (Kronecker convention).
class SubsystemShape {
 public:
  SubsystemShape() = default;
  SubsystemShape(std::initializer_list<Subsystem> parts)
      : parts_(parts) {
    validate();
  }
  explicit SubsystemShape(std::vector<Subsystem> parts) : parts_(std::move(parts)) {
    validate();
  }

  Eigen::Index total_dim() const {
    Eigen::Index d = 1;
    for (const auto& p : parts_) d *= p.dim;
    return d;
  }

  std::size_t size() const { return parts_.size(); }
  const Subsystem& operator[](std::size_t i) const { return parts_[i]; }
  const std::vector<Subsystem>& parts() const { return parts_; }

  bool has(const std::string& label) const {
    for (const auto& p : parts_)
      if (p.label == label) return true;
    return false;
  }

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < parts_.size(); ++i)
      if (parts_[i].label == label) return i;
    throw LabelError("no subsystem labeled '" + label + "'");
  }

  Eigen::Index dim_of(const std::string& label) const {
    return parts_[index_of(label)].dim;
  }

  // Concatenation; labels must stay distinct.
  friend SubsystemShape operator+(const SubsystemShape& a, const SubsystemShape& b) {
    std::vector<Subsystem> parts = a.parts_;
    parts.insert(parts.end(), b.parts_.begin(), b.parts_.end());
    return SubsystemShape(std::move(parts));
  }

  friend bool operator==(const SubsystemShape&, const SubsystemShape&) = default;

 private:
  void validate() const {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i].dim < 1) throw ShapeError("subsystem '" + parts_[i].label + "' has dim < 1");
      if (parts_[i].label.empty()) throw LabelError("empty subsystem label");
      for (std::size_t j = i + 1; j < parts_.size(); ++j)
        if (parts_[i].label == parts_[j].label)
          throw LabelError("duplicate subsystem label '" + parts_[i].label + "'");
    }
  }

  std::vector<Subsystem> parts_;
};

// Single-subsystem convenience.
inline SubsystemShape single(const std::string& label, Eigen::Index dim) {
  return SubsystemShape{{label, dim}};
}

}  // namespace qrelay
