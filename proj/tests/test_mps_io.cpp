// Copyright 2026 The srecrit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "srecrit/dmrg.hpp"
#include "srecrit/mps_io.hpp"

namespace srecrit {
namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

TEST(MpsIo, RealRoundTripIsBitExact) {
  const TfimSpec spec{10, 1.0, Boundary::open};
  const auto mps = dmrg_ground(spec).mps;
  const auto path = temp_path("srecrit_io_real.bin");
  save_mps(path, mps, spec);
  const auto back = load_mps<double>(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back.spec.num_sites, 10u);
  EXPECT_EQ(back.spec.coupling, 1.0);
  EXPECT_EQ(back.spec.boundary, Boundary::open);
  EXPECT_EQ(back.mps.center(), mps.center());
  EXPECT_EQ(back.mps.bond_dims(), mps.bond_dims());
  for (std::size_t j = 0; j < 10; ++j) {
    for (int s = 0; s < 2; ++s) EXPECT_EQ(back.mps.site(j)[s], mps.site(j)[s]);
  }
}

TEST(MpsIo, ComplexRoundTrip) {
  std::mt19937_64 rng(4);
  const ComplexState s(6, oracle::random_state(6, rng));
  const auto mps = mps_from_dense(s, 0.0);
  const auto path = temp_path("srecrit_io_cplx.bin");
  save_mps(path, mps, TfimSpec{6, 0.5});
  const auto back = load_mps<cplx>(path);
  EXPECT_THROW(load_mps<double>(path), Error);
  std::filesystem::remove(path);
  EXPECT_LT((back.mps.to_vector() - mps.to_vector()).norm(), 1e-15);
}

TEST(MpsIo, RejectsCorruptFiles) {
  const auto path = temp_path("srecrit_io_bad.bin");
  {
    std::ofstream f(path, std::ios::binary);
    f << "NOTANMPS0000000000000000";
  }
  EXPECT_THROW(load_mps<double>(path), Error);
  save_mps(path, RealMps::product_state(4), TfimSpec{4, 1.0});
  std::filesystem::resize_file(path, std::filesystem::file_size(path) - 8);
  EXPECT_THROW(load_mps<double>(path), Error);
  std::filesystem::remove(path);
  EXPECT_THROW(load_mps<double>(path), Error);
}

}  // namespace
}  // namespace srecrit
