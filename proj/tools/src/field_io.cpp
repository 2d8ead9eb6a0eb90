#include "field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace hjsc::cli {
namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> split_numbers(const std::string& line, std::size_t line_no) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t comma = line.find(',', pos);
    const std::string cell = line.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw FormatError("line " + std::to_string(line_no) + ": bad number '" + cell + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string format_field(const ValueField& u) {
  const Grid& g = u.grid();
  const int dim = g.dimension();
  std::ostringstream out;
  out << "# hjsc-field v1, dim=" << dim << ", spacing=" << num(g.spacing().x);
  if (dim == 2) out << ';' << num(g.spacing().y);
  out << '\n' << (dim == 2 ? "x,y,u\n" : "x,u\n");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g.admissible(i)) continue;
    const Vec x = g.node(i);
    out << num(x.x) << ',';
    if (dim == 2) out << num(x.y) << ',';
    out << num(u[i]) << '\n';
  }
  return out.str();
}

ValueField parse_field(const std::string& text, std::shared_ptr<const Grid> grid) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# hjsc-field v1", 0) != 0) {
    throw FormatError("line 1: missing '# hjsc-field v1' header");
  }
  const int dim = grid->dimension();
  const std::string want_dim = "dim=" + std::to_string(dim);
  if (line.find(want_dim) == std::string::npos) {
    throw FormatError("line 1: field dimension does not match the configured domain");
  }
  const std::size_t sp = line.find("spacing=");
  if (sp == std::string::npos) throw FormatError("line 1: missing spacing");
  {
    std::string s = line.substr(sp + 8);
    const std::size_t semi = s.find(';');
    const double hx = std::stod(s.substr(0, semi));
    const double hy = semi == std::string::npos ? grid->spacing().y : std::stod(s.substr(semi + 1));
    const Vec h = grid->spacing();
    if (std::abs(hx - h.x) > 1e-12 * h.x || (dim == 2 && std::abs(hy - h.y) > 1e-12 * h.y)) {
      throw FormatError("line 1: field spacing does not match the configured grid");
    }
  }
  std::getline(in, line);  // column names

  std::vector<double> values(grid->size(), std::numeric_limits<double>::quiet_NaN());
  std::size_t node = 0;
  std::size_t line_no = 2;
  const double slack = 1e-9 * grid->min_spacing();
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<double> row = split_numbers(line, line_no);
    if (row.size() != static_cast<std::size_t>(dim + 1)) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(dim + 1) + " columns");
    }
    while (node < grid->size() && !grid->admissible(node)) ++node;
    if (node == grid->size()) throw FormatError("line " + std::to_string(line_no) + ": too many rows");
    const Vec x = grid->node(node);
    if (std::abs(row[0] - x.x) > slack || (dim == 2 && std::abs(row[1] - x.y) > slack)) {
      throw FormatError("line " + std::to_string(line_no) + ": node coordinates do not match the grid");
    }
    values[node] = row[dim];
    ++node;
  }
  while (node < grid->size() && !grid->admissible(node)) ++node;
  if (node != grid->size()) throw FormatError("field file ends before the last grid node");
  return ValueField(std::move(grid), std::move(values));
}

ValueField read_field(const std::filesystem::path& path, std::shared_ptr<const Grid> grid) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_field(buf.str(), std::move(grid));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string format_curve(const MinimizingCurve& curve, int dimension) {
  std::ostringstream out;
  out << "# hitting_time=" << (curve.finite_hitting() ? num(curve.hitting_time) : "inf") << '\n';
  out << (dimension == 2 ? "s,x,y,vx,vy,eta_x,eta_y,cost\n" : "s,x,vx,eta_x,cost\n");
  for (std::size_t k = 0; k < curve.size(); ++k) {
    const Vec& x = curve.positions[k];
    const Vec& v = curve.velocities[k];
    const Vec& e = curve.costates[k];
    out << num(curve.times[k]) << ',' << num(x.x) << ',';
    if (dimension == 2) out << num(x.y) << ',';
    out << num(v.x) << ',';
    if (dimension == 2) out << num(v.y) << ',';
    out << num(e.x) << ',';
    if (dimension == 2) out << num(e.y) << ',';
    out << num(curve.running_cost[k]) << '\n';
  }
  return out.str();
}

}  // namespace hjsc::cli
