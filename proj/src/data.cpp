#include "revana/data.hpp"

#include <cmath>

namespace revana {

DataColumn::DataColumn(std::string label, Eigen::VectorXd values)
    : label_(std::move(label)), values_(std::move(values)) {
  if (values_.size() < 2) {
    throw InputError("column '" + label_ + "' needs at least 2 rows, got " +
                     std::to_string(values_.size()));
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InputError("column '" + label_ + "' has a non-finite entry at row " +
                       std::to_string(i + 1));
    }
  }
}

DataColumn::DataColumn(std::string label, std::initializer_list<double> values)
    : DataColumn(std::move(label),
                 Eigen::Map<const Eigen::VectorXd>(values.begin(),
                                                   static_cast<Eigen::Index>(values.size()))) {}

DataMatrix::DataMatrix(std::vector<DataColumn> columns) {
  for (auto& column : columns) append(std::move(column));
}

void DataMatrix::check_compatible(const DataColumn& column) const {
  if (!columns_.empty() && column.n() != rows()) {
    throw DimensionMismatch("column '" + column.label() + "' has " +
                            std::to_string(column.n()) + " rows, expected " +
                            std::to_string(rows()));
  }
  for (const auto& existing : columns_) {
    if (existing.label() == column.label()) {
      throw InputError("duplicate column label '" + column.label() + "'");
    }
  }
}

void DataMatrix::append(DataColumn column) {
  check_compatible(column);
  columns_.push_back(std::move(column));
}

const DataColumn& DataMatrix::at(const std::string& label) const {
  for (const auto& column : columns_) {
    if (column.label() == label) return column;
  }
  throw InputError("no column labeled '" + label + "'");
}

bool DataMatrix::contains(const std::string& label) const {
  for (const auto& column : columns_) {
    if (column.label() == label) return true;
  }
  return false;
}

std::vector<std::string> DataMatrix::labels() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const auto& column : columns_) out.push_back(column.label());
  return out;
}

Eigen::MatrixXd DataMatrix::dense() const {
  Eigen::MatrixXd out(rows(), static_cast<Eigen::Index>(cols()));
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = columns_[j].values();
  }
  return out;
}

DataMatrix DataMatrix::select(const std::vector<std::string>& wanted) const {
  DataMatrix out;
  for (const auto& label : wanted) out.append(at(label));
  return out;
}

}  // namespace revana
