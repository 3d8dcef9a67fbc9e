#include "segeval/demo.hpp"

#include "segeval/random.hpp"

namespace segeval::demo {

namespace {

Segment seg(double start, double end) {
    Segment s;
    s.start = start;
    s.end = end;
    return s;
}

}  // namespace

Instance metric_contrast_instance() {
    // IoU matrix (rows gt, cols proposals):
    //   0.26  0.32  0     0
    //   0     0.49  0.20  0
    //   0     0     0     0.75
    // Row maxes (p2,p2,p4) average 0.52; the ordered matching
    // (g1,p1),(g2,p2),(g3,p4) totals 1.50, i.e. 0.50 per segment.
    Instance inst;
    inst.gt.video_id = "contrast-demo";
    inst.gt.duration = 300.0;
    inst.gt.segments = {seg(17.25, 100.0), seg(100.0, 200.0), seg(200.0, 300.0)};
    inst.pred.video_id = "contrast-demo";
    inst.pred.duration = 300.0;
    inst.pred.segments = {seg(0.0, 43.25), seg(50.0, 173.5), seg(175.0, 195.0),
                          seg(210.0, 285.0)};
    return inst;
}

Instance order_violation_instance() {
    // IoU matrix:
    //   0.30   0.50  0
    //   0.625  0     0.40
    // Unordered optimum (g1,p2),(g2,p1) = 1.125 crosses in time; the
    // ordered optimum is (g1,p2),(g2,p3) = 0.90.
    Instance inst;
    inst.gt.video_id = "crossing-demo";
    inst.gt.duration = 20.0;
    inst.gt.segments = {seg(0.0, 10.0), seg(10.0, 20.0)};
    inst.pred.video_id = "crossing-demo";
    inst.pred.duration = 20.0;
    inst.pred.segments = {seg(4.0, 20.0), seg(5.0, 10.0), seg(12.0, 16.0)};
    return inst;
}

Instance order_sensitivity_instance() {
    Instance inst;
    inst.gt.video_id = "ordering-demo";
    inst.gt.duration = 20.0;
    inst.gt.segments = {seg(0.0, 10.0), seg(10.0, 20.0)};
    inst.pred.video_id = "ordering-demo";
    inst.pred.duration = 20.0;
    inst.pred.segments = {seg(0.0, 9.0), seg(10.0, 18.0)};
    return inst;
}

CrossingSuite order_crossing_suite(std::size_t num_videos, std::uint64_t seed) {
    CrossingSuite suite;
    Rng rng(seed);
    for (std::size_t v = 0; v < num_videos; ++v) {
        const double duration = 20.0;
        const double boundary = 10.0 + rng.uniform(-1.0, 1.0);

        VideoAnnotation gt;
        gt.video_id = "crossing-" + std::to_string(v);
        gt.duration = duration;
        gt.segments = {seg(0.0, boundary), seg(boundary, duration)};

        // p1: long straddler starting near 0, reaching the video end; its
        // overlap with g2 beats p3's, so the unordered matcher drags it.
        // p2: close to g1. p3: inside g2, the ordered matcher's pick.
        const double p1_start = 0.5 + rng.uniform(0.0, 0.5);
        const double p2_start = p1_start + 0.5 + rng.uniform(0.0, 0.5);
        const double p2_end = boundary + rng.uniform(-0.3, 0.3);
        const double p3_start = boundary + 3.0 + rng.uniform(-0.3, 0.3);
        const double p3_end = duration - 2.2 + rng.uniform(-0.3, 0.3);

        suite.gt.push_back(gt);
        suite.initial_proposals.push_back(
            {seg(p1_start, duration), seg(p2_start, p2_end), seg(p3_start, p3_end)});
    }
    return suite;
}

}  // namespace segeval::demo
