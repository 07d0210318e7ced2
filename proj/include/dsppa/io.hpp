// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dsppa/linalg.hpp"
#include "dsppa/metrics.hpp"
#include "dsppa/solvers.hpp"

#include <json.hpp>

#include <filesystem>

namespace dsppa {

/// DSM1: the bytes "DSM1", rows and cols as little-endian u64, then
/// rows * cols little-endian f64 in row-major order.
/// CSV: comma-separated rows, optionally preceded by one non-numeric header.
enum class MatrixFormat { Auto, Dsm1, Csv };

/// Auto picks DSM1 when the file starts with the magic bytes, CSV otherwise.
RowMatrix read_matrix_values(const std::filesystem::path& path,
                             MatrixFormat format = MatrixFormat::Auto);
DesignMatrix read_matrix(const std::filesystem::path& path,
                         MatrixFormat format = MatrixFormat::Auto);
/// Accepts an n x 1 or 1 x n matrix file.
Vector read_vector(const std::filesystem::path& path, MatrixFormat format = MatrixFormat::Auto);

/// Auto writes CSV for a ".csv" extension and DSM1 otherwise.
void write_matrix(const std::filesystem::path& path, const RowMatrix& m,
                  MatrixFormat format = MatrixFormat::Auto);
void write_vector(const std::filesystem::path& path, const Vector& v,
                  MatrixFormat format = MatrixFormat::Auto);

/// Run report with stable field names. Timing fields end in "_s".
nlohmann::json report_json(const SolveReport& rep, const MetricReport* metrics = nullptr,
                           bool include_trace = false);
void write_report(const SolveReport& rep, const MetricReport* metrics,
                  const std::filesystem::path& path, bool include_trace = false);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace dsppa
