#pragma once

#include <filesystem>
#include <string>

#include "cycleclust/markov.hpp"

namespace cycleclust {

/// Plain-text matrix files:
///   tm-v1: line 1 is `n`, then n rows of n numbers (row-major P).
///   fm-v1: line 1 is `FM n`, then n rows of n numbers (row-major W).
enum class MatrixFormat { Transition, Flow };

struct MatrixFile {
  MatrixFormat format = MatrixFormat::Transition;
  Matrix entries;
};

MatrixFile parse_matrix(const std::string& text);
MatrixFile read_matrix_file(const std::filesystem::path& path);

/// Numbers are written with 17 significant digits so files round-trip exactly.
std::string format_matrix(MatrixFormat format, const Matrix& entries);
void write_matrix_file(const std::filesystem::path& path, MatrixFormat format, const Matrix& entries);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace cycleclust
