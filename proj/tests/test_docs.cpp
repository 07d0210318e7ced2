// Copyright 2026 The dsppa Authors. SPDX-License-Identifier: Apache-2.0
#include "dsppa/repro.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

using namespace dsppa;

TEST(OperationIndex, EveryOperationIsDocumented) {
  std::ifstream in(DSPPA_OPERATIONS_DOC);
  ASSERT_TRUE(in) << DSPPA_OPERATIONS_DOC;
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string doc = ss.str();
  for (const auto& op : operation_index()) {
    EXPECT_NE(doc.find("`" + op.name + "`"), std::string::npos) << op.name << " missing from docs";
    EXPECT_FALSE(op.computes.empty()) << op.name;
  }
}

TEST(OperationIndex, NamesAreUnique) {
  std::set<std::string> names;
  for (const auto& op : operation_index()) EXPECT_TRUE(names.insert(op.name).second) << op.name;
  EXPECT_GE(names.size(), 30u);
}

TEST(Scenarios, RegisteredAndFindable) {
  for (const auto& s : registered_scenarios()) EXPECT_EQ(find_scenario(s.id).id, s.id);
  EXPECT_ANY_THROW(find_scenario("nope"));
}
