#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "uavmec/error.hpp"
#include "uavmec/harness/csv.hpp"

using namespace uavmec;
using namespace uavmec::harness;
namespace fs = std::filesystem;

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e300, 138.10, 0.0}) {
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(CsvTable, Rendering) {
  CsvTable t({"a", "b", "c"});
  t.add_row({cell(std::size_t{3}), cell(0.25), cell(std::string("x"))});
  t.add_row({"1,2", "say \"hi\"", ""});
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.str(), "a,b,c\n3,0.25,x\n\"1,2\",\"say \"\"hi\"\"\",\n");
}

TEST(CsvTable, WidthMismatchThrows) {
  CsvTable t({"a", "b"});
  EXPECT_THROW(t.add_row({"1"}), Error);
  EXPECT_THROW(t.add_row({"1", "2", "3"}), Error);
  EXPECT_EQ(t.size(), 0u);
}

TEST(CsvTable, WriteCreatesDirectoriesAndLeavesNoTemp) {
  const fs::path dir = fs::temp_directory_path() / "uavmec_csv_test" / "nested";
  fs::remove_all(dir.parent_path());
  CsvTable t({"k"});
  t.add_row({"v"});
  const std::string path = (dir / "out.csv").string();
  t.write(path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "k\nv\n");
  EXPECT_FALSE(fs::exists(path + ".tmp"));
  t.add_row({"w"});
  t.write(path);
  std::ifstream again(path);
  std::stringstream s2;
  s2 << again.rdbuf();
  EXPECT_EQ(s2.str(), "k\nv\nw\n");
  fs::remove_all(dir.parent_path());
}
