#ifndef REVANA_DATA_HPP
#define REVANA_DATA_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "revana/errors.hpp"

namespace revana {

/// A labeled column of observations.  Entries must be finite and at least
/// two rows long; constant columns are permitted here and rejected by the
/// operations whose preconditions exclude them.
class DataColumn {
 public:
  DataColumn(std::string label, Eigen::VectorXd values);
  DataColumn(std::string label, std::initializer_list<double> values);

  const std::string& label() const { return label_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index n() const { return values_.size(); }
  double operator[](Eigen::Index i) const { return values_[i]; }

  DataColumn relabeled(std::string label) const { return {std::move(label), values_}; }

 private:
  std::string label_;
  Eigen::VectorXd values_;
};

/// An ordered collection of equally long columns with unique labels.
class DataMatrix {
 public:
  DataMatrix() = default;
  explicit DataMatrix(std::vector<DataColumn> columns);

  void append(DataColumn column);

  std::size_t cols() const { return columns_.size(); }
  bool empty() const { return columns_.empty(); }
  Eigen::Index rows() const { return columns_.empty() ? 0 : columns_.front().n(); }

  const DataColumn& operator[](std::size_t i) const { return columns_[i]; }
  const DataColumn& at(const std::string& label) const;
  bool contains(const std::string& label) const;

  std::vector<std::string> labels() const;

  /// Dense n-by-k matrix of the column values, in column order.
  Eigen::MatrixXd dense() const;

  /// New matrix holding the named columns, in the order given.
  DataMatrix select(const std::vector<std::string>& wanted) const;

  auto begin() const { return columns_.begin(); }
  auto end() const { return columns_.end(); }

 private:
  void check_compatible(const DataColumn& column) const;
  std::vector<DataColumn> columns_;
};

}  // namespace revana

#endif
