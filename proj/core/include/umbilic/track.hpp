#pragma once

#include <umbilic/detect.hpp>
#include <umbilic/geometry.hpp>
#include <umbilic/grid.hpp>
#include <umbilic/polynomial.hpp>

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace umbilic {

// A one-parameter family of fields indexed by scale. Two implementations:
// resampling an analytic family (margins stay empty) and numeric Gaussian
// diffusion of a base sample (margins grow with the accumulated blur).
class ScaleFamily {
  public:
    virtual ~ScaleFamily() = default;
    virtual GridField field_at(double s) = 0;
    virtual double base_scale() const = 0;
};

class AnalyticFamily final : public ScaleFamily {
  public:
    AnalyticFamily(std::function<double(double, double, double)> fn, Window win,
                   double h, double s0);
    // Polynomial families get a compiled per-scale evaluator.
    AnalyticFamily(Polynomial family, Window win, double h, double s0);

    GridField field_at(double s) override;
    double base_scale() const override { return s0_; }

  private:
    std::function<double(double, double, double)> fn_;
    std::unique_ptr<Polynomial> poly_;
    Window win_;
    double h_;
    double s0_;
};

class DiffusionFamily final : public ScaleFamily {
  public:
    explicit DiffusionFamily(GridField base);

    // Blurs incrementally from the last produced field when moving up in
    // scale, and from the base sample when moving down (bisection).
    GridField field_at(double s) override;
    double base_scale() const override { return base_.scale; }

  private:
    GridField base_;
    GridField current_;
};

enum class EndStatus { AtBoundary, Vanished, Merged, Created };

struct TrajectoryNode {
    int rung;
    double s;
    CriticalPoint cp;
};

struct Trajectory {
    int id = 0;
    std::vector<TrajectoryNode> nodes;
    EndStatus start_status = EndStatus::AtBoundary;  // AtBoundary or Created
    EndStatus end_status = EndStatus::AtBoundary;    // AtBoundary, Vanished or Merged

    const TrajectoryNode& front() const { return nodes.front(); }
    const TrajectoryNode& back() const { return nodes.back(); }
    // Linear extrapolation of the last two positions (last position when the
    // trajectory has a single node).
    Vec2 predicted_next() const;
    double last_step_length() const;
};

enum class EventKind { Creation, Annihilation, Merge };

std::string event_kind_name(EventKind k);

struct ScaleEvent {
    EventKind kind;
    double s_estimate = 0;
    double s_lo = 0, s_hi = 0;  // bracketing scales
    Vec2 location{};
    std::vector<int> participants;
};

struct TrackConfig {
    DetectConfig detect;
    // Linking gate: max(gate_cells * h, gate_pred_factor * last displacement).
    double gate_cells = 3.0;
    double gate_pred_factor = 2.0;
    double tie_rel = 0.10;          // tie-break logging threshold
    double event_dist_cells = 5.0;  // event clustering threshold
    double bisect_rel_tol = 0.01;   // refinement bracket target (relative)
};

struct TrackResult {
    std::vector<Trajectory> trajectories;
    std::vector<double> ladder;
    std::vector<int> census;  // detections per rung
    std::vector<std::string> log;
    double h = 0;
};

// Detects at every rung and links rung-to-rung by gated nearest neighbor.
// The ladder must start at the family's base scale and be strictly
// increasing.
TrackResult track(ScaleFamily& family, const std::vector<double>& ladder,
                  const TrackConfig& cfg = {});

// Convenience: numeric diffusion from an initial sample.
TrackResult track(const GridField& initial, const std::vector<double>& ladder,
                  const TrackConfig& cfg = {});

// Creation/annihilation/merge events from linked trajectories. With refine,
// each event scale is bisected between its bracketing rungs by re-detecting
// on fields from `family`. Merge participants' end states are upgraded.
std::vector<ScaleEvent> find_events(TrackResult& result, ScaleFamily& family,
                                    const TrackConfig& cfg = {}, bool refine = false);

// n scales from s0 to s1 inclusive. The geometric ladder requires s0 > 0.
std::vector<double> linear_ladder(double s0, double s1, int n);
std::vector<double> geometric_ladder(double s0, double s1, int n);

}  // namespace umbilic
