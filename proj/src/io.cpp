// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/io.hpp"

#include "dsppa/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace dsppa {

namespace {

constexpr char kMagic[4] = {'D', 'S', 'M', '1'};

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::uint64_t load_u64(const char* p) {
  std::uint64_t v = 0;
  for (int k = 7; k >= 0; --k) v = (v << 8) | static_cast<unsigned char>(p[k]);
  return v;
}

void store_u64(std::string& out, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}

double load_f64(const char* p) {
  const std::uint64_t bits = load_u64(p);
  double d;
  std::memcpy(&d, &bits, sizeof d);
  return d;
}

void store_f64(std::string& out, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof d);
  store_u64(out, bits);
}

RowMatrix parse_dsm1(const std::string& buf, const std::string& name) {
  if (buf.size() < 4 || std::memcmp(buf.data(), kMagic, 4) != 0)
    throw FormatError("'" + name + "' does not start with DSM1 magic bytes");
  if (buf.size() < 20)
    throw FormatError("'" + name + "' is truncated: header needs 20 bytes, found " +
                      std::to_string(buf.size()));
  const std::uint64_t rows = load_u64(buf.data() + 4);
  const std::uint64_t cols = load_u64(buf.data() + 12);
  const std::uint64_t limit = std::uint64_t{1} << 40;
  if (rows > limit || cols > limit || (cols != 0 && rows > limit / cols))
    throw FormatError("'" + name + "' declares an implausible shape");
  const std::uint64_t expected = rows * cols * 8;
  const std::uint64_t actual = buf.size() - 20;
  if (actual != expected)
    throw FormatError("'" + name + "' payload size mismatch: expected " + std::to_string(expected) +
                      " bytes, found " + std::to_string(actual));
  RowMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  const char* p = buf.data() + 20;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j, p += 8) m(i, j) = load_f64(p);
  return m;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view field, double& out) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return false;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), out);
  return res.ec == std::errc() && res.ptr == field.data() + field.size();
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

RowMatrix parse_csv(const std::string& buf, const std::string& name) {
  std::vector<double> values;
  Index cols = -1;
  Index rows = 0;
  std::size_t line_no = 0;
  bool first_content = true;
  std::size_t pos = 0;
  while (pos <= buf.size()) {
    const auto nl = buf.find('\n', pos);
    std::string_view line(buf.data() + pos, (nl == std::string::npos ? buf.size() : nl) - pos);
    pos = nl == std::string::npos ? buf.size() + 1 : nl + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    std::vector<double> row;
    row.reserve(fields.size());
    bool numeric = true;
    for (auto f : fields) {
      double v;
      if (!parse_number(f, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (first_content) {
        first_content = false;
        continue;  // header line
      }
      throw ParseError("'" + name + "' line " + std::to_string(line_no) + ": non-numeric field");
    }
    first_content = false;
    if (cols < 0) cols = static_cast<Index>(row.size());
    if (static_cast<Index>(row.size()) != cols)
      throw ParseError("'" + name + "' line " + std::to_string(line_no) + ": expected " +
                       std::to_string(cols) + " fields, found " + std::to_string(row.size()));
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows == 0) throw ParseError("'" + name + "' contains no numeric rows");
  RowMatrix m(rows, cols);
  std::copy(values.begin(), values.end(), m.data());
  return m;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

RowMatrix read_matrix_values(const std::filesystem::path& path, MatrixFormat format) {
  const std::string buf = read_all(path);
  const std::string name = path.string();
  if (format == MatrixFormat::Auto)
    format = buf.size() >= 4 && std::memcmp(buf.data(), kMagic, 4) == 0 ? MatrixFormat::Dsm1
                                                                       : MatrixFormat::Csv;
  RowMatrix m = format == MatrixFormat::Dsm1 ? parse_dsm1(buf, name) : parse_csv(buf, name);
  if (!m.allFinite()) throw DataError("'" + name + "' contains non-finite values");
  return m;
}

DesignMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format) {
  return DesignMatrix(read_matrix_values(path, format));
}

Vector read_vector(const std::filesystem::path& path, MatrixFormat format) {
  const RowMatrix m = read_matrix_values(path, format);
  if (m.cols() != 1 && m.rows() != 1)
    throw DimensionError("'" + path.string() + "' is not a vector (" + std::to_string(m.rows()) +
                         " x " + std::to_string(m.cols()) + ")");
  return Eigen::Map<const Vector>(m.data(), m.size());
}

void write_matrix(const std::filesystem::path& path, const RowMatrix& m, MatrixFormat format) {
  if (format == MatrixFormat::Auto)
    format = path.extension() == ".csv" ? MatrixFormat::Csv : MatrixFormat::Dsm1;
  std::string out;
  if (format == MatrixFormat::Dsm1) {
    out.reserve(20 + static_cast<std::size_t>(m.size()) * 8);
    out.append(kMagic, 4);
    store_u64(out, static_cast<std::uint64_t>(m.rows()));
    store_u64(out, static_cast<std::uint64_t>(m.cols()));
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) store_f64(out, m(i, j));
  } else {
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index j = 0; j < m.cols(); ++j) {
        if (j) out.push_back(',');
        out += format_double(m(i, j));
      }
      out.push_back('\n');
    }
  }
  write_text(path, out);
}

void write_vector(const std::filesystem::path& path, const Vector& v, MatrixFormat format) {
  write_matrix(path, RowMatrix(Eigen::Map<const RowMatrix>(v.data(), v.size(), 1)), format);
}

nlohmann::json report_json(const SolveReport& rep, const MetricReport* metrics,
                           bool include_trace) {
  nlohmann::json j;
  j["algorithm"] = to_string(rep.algorithm);
  j["lambda"] = rep.lambda;
  j["mu"] = rep.mu;
  j["K"] = rep.K;
  j["iterations"] = rep.iterations;
  j["converged"] = rep.converged;
  j["termination"] = to_string(rep.termination);
  j["beta_nnz"] = (rep.beta_hat.array() != 0.0).count();
  j["metrics"] = metrics ? to_json(*metrics) : nlohmann::json::object();
  nlohmann::json ts = nlohmann::json::object();
  ts["length"] = rep.trace.size();
  if (!rep.trace.empty()) {
    ts["final_rel_change"] = rep.trace.back().rel_change;
    ts["final_feas_inf"] = rep.trace.back().feas_inf;
  }
  ts["eta"] = rep.eta;
  ts["etas"] = rep.etas;
  ts["slack_dual_reals"] = rep.slack_dual_reals;
  if (include_trace) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : rep.trace) rows.push_back({e.rel_change, e.feas_inf});
    ts["trace"] = rows;
  }
  j["trace_summary"] = ts;
  j["wall_time_s"] = rep.wall_time_s;
  j["precompute_time_s"] = rep.precompute_time_s;
  return j;
}

void write_report(const SolveReport& rep, const MetricReport* metrics,
                  const std::filesystem::path& path, bool include_trace) {
  write_json(path, report_json(rep, metrics, include_trace));
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const std::filesystem::path& path) {
  const std::string buf = read_all(path);
  try {
    return nlohmann::json::parse(buf);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace dsppa
