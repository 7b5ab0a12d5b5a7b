#include <gtest/gtest.h>

#include <filesystem>

#include "cycleclust/error.hpp"
#include "cycleclust/fixtures.hpp"
#include "cycleclust/matrix_io.hpp"

using namespace cycleclust;

TEST(MatrixIo, ParsesTransitionFile) {
  const auto f = parse_matrix("2\n0.9 0.1\n0.2 0.8\n");
  EXPECT_EQ(f.format, MatrixFormat::Transition);
  EXPECT_EQ(f.entries(0, 1), 0.1);
  EXPECT_EQ(f.entries(1, 0), 0.2);
}

TEST(MatrixIo, ParsesFlowFile) {
  const auto f = parse_matrix("FM 2\n0.25 0.25\n0.25 0.25\n");
  EXPECT_EQ(f.format, MatrixFormat::Flow);
  EXPECT_EQ(f.entries.sum(), 1.0);
}

TEST(MatrixIo, RejectsMalformed) {
  EXPECT_THROW(parse_matrix(""), Error);
  EXPECT_THROW(parse_matrix("2\n1 0\n"), Error);
  EXPECT_THROW(parse_matrix("2\n1 0 0\n0 1\n"), Error);
  EXPECT_THROW(parse_matrix("2\n1 x\n0 1\n"), Error);
  EXPECT_THROW(parse_matrix("XX 2\n1 0\n0 1\n"), Error);
  EXPECT_THROW(parse_matrix("2\nFM 2\n1 0\n0 1\n"), Error);
  EXPECT_THROW(parse_matrix("0\n"), Error);
}

TEST(MatrixIo, RoundTripIsExact) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto p = random_transition_matrix(11, seed);
    const auto back = parse_matrix(format_matrix(MatrixFormat::Transition, p.entries()));
    EXPECT_EQ(back.entries, p.entries());
    const auto w = random_flow_matrix(11, seed);
    EXPECT_EQ(parse_matrix(format_matrix(MatrixFormat::Flow, w.entries())).entries, w.entries());
  }
}

TEST(MatrixIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "cycleclust_io_test.fm";
  const auto w = triangle_fixture();
  write_matrix_file(path, MatrixFormat::Flow, w.entries());
  const auto f = read_matrix_file(path);
  EXPECT_EQ(f.format, MatrixFormat::Flow);
  EXPECT_EQ(f.entries, w.entries());
  std::filesystem::remove(path);
  EXPECT_THROW(read_matrix_file(path), Error);
}
