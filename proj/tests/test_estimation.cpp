#include <gtest/gtest.h>

#include "mhnc/estimation.hpp"
#include "mhnc/rng.hpp"

using namespace mhnc;

namespace {

FeedbackBundle local(bool ack, Slot at = 0) {
  FeedbackBundle fb;
  fb.acked_packet_created_at = at;
  fb.ack = ack;
  return fb;
}

}  // namespace

TEST(Estimator, HistoryExample) {
  ErasureEstimator est(0, 5);
  for (bool b : {true, true, false, true}) est.ingest_feedback(local(b));
  EXPECT_DOUBLE_EQ(est.estimate(0), 0.25);
  EXPECT_EQ(est.samples(0), 4);
}

TEST(Estimator, EmptyHistoryIsZero) {
  ErasureEstimator est(1, 5);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(est.estimate(i), 0.0);
  EXPECT_EQ(est.bottleneck(), 1);
}

TEST(Estimator, ConvergesOnBernoulliStream) {
  ErasureEstimator est(0, 1);
  Rng rng(4, StreamTag::Channel, 0);
  for (int i = 0; i < 10000; ++i) est.record(0, !rng.bernoulli(0.4));
  EXPECT_NEAR(est.estimate(0), 0.4, 0.015);
}

TEST(Estimator, BottleneckExamples) {
  auto with_rates = [](NodeIndex node, std::vector<double> eps) {
    ErasureEstimator est(node, static_cast<int>(eps.size()));
    for (std::size_t c = static_cast<std::size_t>(node); c < eps.size(); ++c) {
      const int erased = static_cast<int>(eps[c] * 100 + 0.5);
      for (int k = 0; k < 100; ++k) est.record(static_cast<int>(c), k >= erased);
    }
    return est;
  };
  EXPECT_EQ(with_rates(1, {0.1, 0.4, 0.3, 0.3, 0.1}).bottleneck(), 1);
  EXPECT_EQ(with_rates(2, {0.1, 0.4, 0.6, 0.3, 0.1}).bottleneck(), 2);
  EXPECT_EQ(with_rates(0, {0.1, 0.4, 0.6, 0.3, 0.1}).bottleneck(), 2);
  EXPECT_EQ(with_rates(1, {0.3, 0.3, 0.3, 0.3, 0.3}).bottleneck(), 1);
}

TEST(Estimator, MalformedTripleRejected) {
  ErasureEstimator est(2, 5);
  FeedbackBundle fb = local(true);
  fb.downstream.push_back({2, 0, true});
  EXPECT_THROW(est.ingest_feedback(fb), std::invalid_argument);
  fb.downstream = {{1, 0, true}};
  EXPECT_THROW(est.ingest_feedback(fb), std::invalid_argument);
}

TEST(Estimator, LastRelayForwardsDestinationAcks) {
  ErasureEstimator est(4, 5);
  est.ingest_feedback(local(true, 1));
  est.ingest_feedback(local(false, 2));
  est.ingest_feedback(local(true, 3));
  const FeedbackBundle out = est.build_outgoing_bundle(true, 7);
  EXPECT_TRUE(out.ack);
  EXPECT_EQ(out.acked_packet_created_at, 7);
  ASSERT_EQ(out.downstream.size(), 3u);
  EXPECT_EQ(out.downstream[1], (DownstreamAck{4, 2, false}));
  EXPECT_EQ(est.pending_forward(), 0u);
  EXPECT_TRUE(est.build_outgoing_bundle(false, 8).downstream.empty());
}

TEST(Estimator, DownstreamTriplesUpdateAndForward) {
  ErasureEstimator est(1, 5);
  FeedbackBundle fb = local(true);
  fb.downstream = {{2, 0, false}, {3, 0, true}, {4, 0, false}};
  est.ingest_feedback(fb);
  EXPECT_EQ(est.estimate(2), 1.0);
  EXPECT_EQ(est.estimate(3), 0.0);
  EXPECT_EQ(est.samples(4), 1);
  // Own channel plus the three forwarded triples.
  EXPECT_EQ(est.build_outgoing_bundle(true, 0).downstream.size(), 4u);
}
