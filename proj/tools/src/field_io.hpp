#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include <hjsc/hjsc.hpp>

namespace hjsc::cli {

/// Malformed or mismatched data file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Writes `content` to a sibling temporary file and renames it into place.
void write_atomically(const std::filesystem::path& path, const std::string& content);

/// `# hjsc-field v1, dim=<d>, spacing=<h>[;<hy>]`, a column-name line, then
/// one `x[,y],u` row per admissible node in storage order.
std::string format_field(const ValueField& u);

/// Reads a field written by format_field onto `grid`, which must have the
/// same node layout.
ValueField parse_field(const std::string& text, std::shared_ptr<const Grid> grid);
ValueField read_field(const std::filesystem::path& path, std::shared_ptr<const Grid> grid);

/// `# hitting_time=<value|inf>`, a column-name line, then
/// `s,x[,y],vx[,vy],eta_x[,eta_y],cost` rows.
std::string format_curve(const MinimizingCurve& curve, int dimension);

}  // namespace hjsc::cli
