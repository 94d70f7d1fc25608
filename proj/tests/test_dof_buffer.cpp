#include <gtest/gtest.h>

#include "mhnc/dof_buffer.hpp"

using namespace mhnc;

TEST(SeenTracker, GreedyAssignment) {
  SeenTracker s;
  EXPECT_TRUE(s.observe(0, 1));
  EXPECT_TRUE(s.observe(0, 1));
  EXPECT_FALSE(s.accepts(0, 1));
  EXPECT_FALSE(s.observe(0, 1));
  EXPECT_TRUE(s.observe(5, 5));
  EXPECT_EQ(s.pointer(), 6);
}

TEST(PrefixTracker, SingletonWindowDecodes) {
  PrefixTracker p;
  EXPECT_TRUE(p.add(0, 0));
  EXPECT_EQ(p.prefix(), 0);
  EXPECT_EQ(p.covered(), 0);
}

TEST(PrefixTracker, WaitsForEnoughDofs) {
  PrefixTracker p;
  EXPECT_FALSE(p.add(1, 1));
  EXPECT_EQ(p.prefix(), -1);
  EXPECT_TRUE(p.add(1, 1));
  EXPECT_EQ(p.prefix(), 1);
  EXPECT_EQ(p.covered(), 1);
}

TEST(PrefixTracker, OutOfOrderSpans) {
  PrefixTracker p;
  EXPECT_FALSE(p.add(2, 2));
  EXPECT_FALSE(p.add(2, 2));
  EXPECT_TRUE(p.add(0, 0));
  EXPECT_EQ(p.prefix(), 2);
  EXPECT_FALSE(p.add(1, 1));  // already covered
}

TEST(PrefixTracker, InheritsSenderCertificate) {
  // A relay DoF may certify less than its information span.
  PrefixTracker p;
  EXPECT_FALSE(p.add(0, -1));
  EXPECT_EQ(p.covered(), 0);
  EXPECT_TRUE(p.add(1, 3));
  EXPECT_EQ(p.prefix(), 3);
}

TEST(DofBuffer, AppendAndDrop) {
  DofBuffer b;
  for (InfoIndex i = 0; i < 5; ++i) b.append(i, i, CodedRow{i, {1}, {}});
  EXPECT_EQ(b.size(), 5);
  b.drop_below(3);
  EXPECT_EQ(b.base(), 3);
  EXPECT_EQ(b.info_hi(4), 4);
  EXPECT_THROW(b.at(2), std::out_of_range);
  EXPECT_EQ(b.rows(0, 4).size(), 2u);
}
