#include <umbilic/track.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace umbilic {

AnalyticFamily::AnalyticFamily(std::function<double(double, double, double)> fn,
                               Window win, double h, double s0)
    : fn_(std::move(fn)), win_(win), h_(h), s0_(s0) {}

AnalyticFamily::AnalyticFamily(Polynomial family, Window win, double h, double s0)
    : poly_(std::make_unique<Polynomial>(std::move(family))), win_(win), h_(h), s0_(s0) {}

GridField AnalyticFamily::field_at(double s) {
    if (poly_) return sample(*poly_, win_, h_, s);
    return sample([&](double x, double y) { return fn_(x, y, s); }, win_, h_, s);
}

DiffusionFamily::DiffusionFamily(GridField base)
    : base_(std::move(base)), current_(base_) {}

GridField DiffusionFamily::field_at(double s) {
    if (s < base_.scale)
        throw std::invalid_argument("diffusion family cannot go below the base scale");
    if (s < current_.scale) current_ = base_;
    if (s > current_.scale) current_ = blur(current_, s - current_.scale);
    return current_;
}

Vec2 Trajectory::predicted_next() const {
    const std::size_t n = nodes.size();
    if (n < 2) return nodes.back().cp.pos;
    const Vec2 last = nodes[n - 1].cp.pos, prev = nodes[n - 2].cp.pos;
    return last + (last - prev);
}

double Trajectory::last_step_length() const {
    const std::size_t n = nodes.size();
    if (n < 2) return 0.0;
    return distance(nodes[n - 1].cp.pos, nodes[n - 2].cp.pos);
}

std::vector<double> linear_ladder(double s0, double s1, int n) {
    if (n < 2 || s1 <= s0) throw std::invalid_argument("bad ladder range");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        out[static_cast<std::size_t>(k)] = s0 + (s1 - s0) * k / (n - 1);
    out.back() = s1;
    return out;
}

std::vector<double> geometric_ladder(double s0, double s1, int n) {
    if (n < 2 || s1 <= s0 || s0 <= 0)
        throw std::invalid_argument("bad geometric ladder range");
    std::vector<double> out(static_cast<std::size_t>(n));
    const double ratio = std::pow(s1 / s0, 1.0 / (n - 1));
    double s = s0;
    for (int k = 0; k < n; ++k) {
        out[static_cast<std::size_t>(k)] = s;
        s *= ratio;
    }
    out.back() = s1;
    return out;
}

std::string event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::Creation: return "creation";
        case EventKind::Annihilation: return "annihilation";
        case EventKind::Merge: return "merge";
    }
    return "?";
}

TrackResult track(ScaleFamily& family, const std::vector<double>& ladder,
                  const TrackConfig& cfg) {
    if (ladder.empty()) throw std::invalid_argument("track: empty ladder");
    if (ladder.front() != family.base_scale())
        throw std::invalid_argument("track: ladder must start at the base scale");
    for (std::size_t i = 1; i < ladder.size(); ++i)
        if (ladder[i] <= ladder[i - 1])
            throw std::invalid_argument("track: ladder must be strictly increasing");

    TrackResult result;
    result.ladder = ladder;

    std::vector<int> live;  // ids of trajectories alive at the previous rung

    for (int rung = 0; rung < static_cast<int>(ladder.size()); ++rung) {
        const double s = ladder[rung];
        const GridField field = family.field_at(s);
        if (rung == 0) result.h = field.h;
        const auto dets = detect(field, cfg.detect);
        result.census.push_back(static_cast<int>(dets.size()));

        if (rung == 0) {
            for (const auto& cp : dets) {
                Trajectory t;
                t.id = static_cast<int>(result.trajectories.size());
                t.start_status = EndStatus::AtBoundary;
                t.nodes.push_back({rung, s, cp});
                live.push_back(t.id);
                result.trajectories.push_back(std::move(t));
            }
            continue;
        }

        // Candidate links within the per-trajectory gate.
        struct Link {
            double dist;
            int traj;
            int det;
        };
        std::vector<Link> links;
        for (const int id : live) {
            const Trajectory& t = result.trajectories[static_cast<std::size_t>(id)];
            const Vec2 pred = t.predicted_next();
            const double gate = std::max(cfg.gate_cells * field.h,
                                         cfg.gate_pred_factor * t.last_step_length());
            for (int d = 0; d < static_cast<int>(dets.size()); ++d) {
                const double dist = distance(pred, dets[static_cast<std::size_t>(d)].pos);
                if (dist <= gate) links.push_back({dist, id, d});
            }
        }
        std::sort(links.begin(), links.end(), [](const Link& a, const Link& b) {
            if (a.dist != b.dist) return a.dist < b.dist;
            if (a.traj != b.traj) return a.traj < b.traj;
            return a.det < b.det;
        });

        std::vector<bool> det_taken(dets.size(), false);
        std::vector<bool> traj_matched(result.trajectories.size(), false);
        for (std::size_t k = 0; k < links.size(); ++k) {
            const Link& L = links[k];
            if (det_taken[static_cast<std::size_t>(L.det)] ||
                traj_matched[static_cast<std::size_t>(L.traj)])
                continue;
            // Candidates within 10% of the closest distance are ambiguous;
            // the smallest trajectory index wins, logged.
            int winner = L.traj;
            bool ambiguous = false;
            for (std::size_t m = k + 1; m < links.size(); ++m) {
                const Link& M = links[m];
                if (M.dist > L.dist * (1.0 + cfg.tie_rel)) break;
                if (M.det != L.det || traj_matched[static_cast<std::size_t>(M.traj)])
                    continue;
                ambiguous = true;
                winner = std::min(winner, M.traj);
            }
            if (ambiguous) {
                std::ostringstream os;
                os << "rung " << rung << ": gate ambiguity on detection " << L.det
                   << ", kept trajectory " << winner;
                result.log.push_back(os.str());
            }
            det_taken[static_cast<std::size_t>(L.det)] = true;
            traj_matched[static_cast<std::size_t>(winner)] = true;
            result.trajectories[static_cast<std::size_t>(winner)].nodes.push_back(
                {rung, s, dets[static_cast<std::size_t>(L.det)]});
        }

        std::vector<int> next_live;
        for (const int id : live) {
            if (traj_matched[static_cast<std::size_t>(id)]) {
                next_live.push_back(id);
            } else {
                result.trajectories[static_cast<std::size_t>(id)].end_status =
                    EndStatus::Vanished;
            }
        }
        for (int d = 0; d < static_cast<int>(dets.size()); ++d) {
            if (det_taken[static_cast<std::size_t>(d)]) continue;
            Trajectory t;
            t.id = static_cast<int>(result.trajectories.size());
            t.start_status = EndStatus::Created;
            t.nodes.push_back({rung, s, dets[static_cast<std::size_t>(d)]});
            next_live.push_back(t.id);
            result.trajectories.push_back(std::move(t));
        }
        live = std::move(next_live);
    }

    for (const int id : live)
        result.trajectories[static_cast<std::size_t>(id)].end_status = EndStatus::AtBoundary;
    return result;
}

TrackResult track(const GridField& initial, const std::vector<double>& ladder,
                  const TrackConfig& cfg) {
    DiffusionFamily family(initial);
    return track(family, ladder, cfg);
}

namespace {

// Number of detections within `radius` of `center` at scale s.
int count_near(ScaleFamily& family, double s, const Vec2& center, double radius,
               const DetectConfig& dcfg) {
    const GridField field = family.field_at(s);
    const auto dets = detect(field, dcfg);
    int n = 0;
    for (const auto& cp : dets)
        if (distance(cp.pos, center) <= radius) ++n;
    return n;
}

// Shrink (s_lo, s_hi] around the scale where the count near `center` drops
// below `count_lo`.
void bisect_event(ScaleFamily& family, ScaleEvent& ev, const Vec2& center,
                  double radius, int count_lo, bool count_rises,
                  const TrackConfig& cfg, double h) {
    double lo = ev.s_lo, hi = ev.s_hi;
    const double floor_width = h * h;  // grid resolution floor in scale
    for (int iter = 0; iter < 60; ++iter) {
        if (hi - lo <= std::max(cfg.bisect_rel_tol * hi, floor_width)) break;
        const double mid = 0.5 * (lo + hi);
        const int n = count_near(family, mid, center, radius, cfg.detect);
        const bool before = count_rises ? (n < count_lo) : (n >= count_lo);
        if (before) lo = mid;
        else hi = mid;
    }
    ev.s_lo = lo;
    ev.s_hi = hi;
    ev.s_estimate = 0.5 * (lo + hi);
}

}  // namespace

std::vector<ScaleEvent> find_events(TrackResult& result, ScaleFamily& family,
                                    const TrackConfig& cfg, bool refine) {
    std::vector<ScaleEvent> events;
    if (result.trajectories.empty()) return events;
    const double h = result.h;
    const double event_dist = cfg.event_dist_cells * h;
    const int last_rung = static_cast<int>(result.ladder.size()) - 1;

    auto pos_at_rung = [&](const Trajectory& t, int rung) -> const CriticalPoint* {
        for (const auto& node : t.nodes)
            if (node.rung == rung) return &node.cp;
        return nullptr;
    };

    // ---- merges / annihilations: trajectories ending mid-ladder ----
    for (int rung = 0; rung < last_rung; ++rung) {
        std::vector<int> enders;
        for (const auto& t : result.trajectories)
            if (t.end_status == EndStatus::Vanished && t.back().rung == rung)
                enders.push_back(t.id);
        if (enders.empty()) continue;

        // Cluster by the linker's own predicted positions: converging
        // trajectories are heading to the same spot even when their last
        // detected positions are still several cells apart.
        std::vector<bool> grouped(enders.size(), false);
        for (std::size_t a = 0; a < enders.size(); ++a) {
            if (grouped[a]) continue;
            std::vector<int> cluster{enders[a]};
            grouped[a] = true;
            const Vec2 pa =
                result.trajectories[static_cast<std::size_t>(enders[a])].predicted_next();
            for (std::size_t b = a + 1; b < enders.size(); ++b) {
                if (grouped[b]) continue;
                const Vec2 pb =
                    result.trajectories[static_cast<std::size_t>(enders[b])].predicted_next();
                if (distance(pa, pb) <= event_dist) {
                    cluster.push_back(enders[b]);
                    grouped[b] = true;
                }
            }
            if (cluster.size() < 2) continue;

            Vec2 centroid{};
            for (const int id : cluster)
                centroid = centroid +
                           result.trajectories[static_cast<std::size_t>(id)].predicted_next();
            centroid = centroid * (1.0 / static_cast<double>(cluster.size()));

            // A trajectory that survives through rung+1 near the centroid is a
            // merge participant (the absorbing point).
            std::vector<int> survivors;
            for (const auto& t : result.trajectories) {
                if (std::find(cluster.begin(), cluster.end(), t.id) != cluster.end())
                    continue;
                const CriticalPoint* cp_next = pos_at_rung(t, rung + 1);
                if (cp_next && distance(cp_next->pos, centroid) <= event_dist)
                    survivors.push_back(t.id);
            }

            ScaleEvent ev;
            ev.s_lo = result.ladder[static_cast<std::size_t>(rung)];
            ev.s_hi = result.ladder[static_cast<std::size_t>(rung) + 1];
            ev.s_estimate = 0.5 * (ev.s_lo + ev.s_hi);
            ev.location = centroid;
            ev.participants = cluster;
            int index_sum = 0;
            bool pair_indices_differ = false;
            if (cluster.size() == 2) {
                const auto& ta = result.trajectories[static_cast<std::size_t>(cluster[0])];
                const auto& tb = result.trajectories[static_cast<std::size_t>(cluster[1])];
                index_sum = std::abs(ta.back().cp.index - tb.back().cp.index);
                pair_indices_differ = index_sum == 1;
            }
            if (survivors.empty() && pair_indices_differ) {
                ev.kind = EventKind::Annihilation;
            } else {
                ev.kind = EventKind::Merge;
                for (const int id : survivors) ev.participants.push_back(id);
            }
            for (const int id : cluster)
                result.trajectories[static_cast<std::size_t>(id)].end_status =
                    EndStatus::Merged;

            if (refine) {
                // Count all participants (enders + survivors) near the event.
                double radius = event_dist;
                for (const int id : cluster) {
                    const auto& t = result.trajectories[static_cast<std::size_t>(id)];
                    radius = std::max(radius, 1.5 * distance(t.back().cp.pos, centroid));
                }
                const int count_lo =
                    static_cast<int>(cluster.size() + survivors.size());
                bisect_event(family, ev, centroid, radius, count_lo, false, cfg, h);
            }
            events.push_back(std::move(ev));
        }
    }

    // ---- creations: trajectories starting mid-ladder ----
    std::vector<int> fresh;
    for (const auto& t : result.trajectories)
        if (t.start_status == EndStatus::Created) fresh.push_back(t.id);

    std::vector<bool> consumed(result.trajectories.size(), false);
    for (std::size_t a = 0; a < fresh.size(); ++a) {
        const Trajectory& ta = result.trajectories[static_cast<std::size_t>(fresh[a])];
        if (consumed[static_cast<std::size_t>(ta.id)]) continue;
        const int rung = ta.front().rung;

        // Preferred partner: another trajectory created at the same rung,
        // nearby, with Morse index differing by one.
        int partner = -1;
        double best = event_dist;
        for (std::size_t b = 0; b < fresh.size(); ++b) {
            if (a == b) continue;
            const Trajectory& tb = result.trajectories[static_cast<std::size_t>(fresh[b])];
            if (consumed[static_cast<std::size_t>(tb.id)] || tb.front().rung != rung) continue;
            const double dist = distance(ta.front().cp.pos, tb.front().cp.pos);
            if (dist <= best &&
                std::abs(ta.front().cp.index - tb.front().cp.index) == 1) {
                best = dist;
                partner = tb.id;
            }
        }
        Vec2 location{};
        bool have_event = false;
        std::vector<int> participants;
        if (partner >= 0) {
            const Trajectory& tb = result.trajectories[static_cast<std::size_t>(partner)];
            location = (ta.front().cp.pos + tb.front().cp.pos) * 0.5;
            participants = {std::min(ta.id, partner), std::max(ta.id, partner)};
            consumed[static_cast<std::size_t>(ta.id)] = true;
            consumed[static_cast<std::size_t>(partner)] = true;
            have_event = true;
        } else {
            // A degenerate point splitting: one half of the pair may have been
            // linked to a pre-existing trajectory that was degenerate at the
            // previous rung.
            for (const auto& t : result.trajectories) {
                if (t.id == ta.id) continue;
                const CriticalPoint* prev = pos_at_rung(t, rung - 1);
                const CriticalPoint* here = pos_at_rung(t, rung);
                if (!prev || !here) continue;
                if (prev->morse != Morse::Degenerate) continue;
                if (distance(here->pos, ta.front().cp.pos) > event_dist) continue;
                if (std::abs(here->index - ta.front().cp.index) != 1) continue;
                location = prev->pos;
                participants = {std::min(ta.id, t.id), std::max(ta.id, t.id)};
                consumed[static_cast<std::size_t>(ta.id)] = true;
                have_event = true;
                break;
            }
        }
        if (!have_event) continue;

        ScaleEvent ev;
        ev.kind = EventKind::Creation;
        ev.s_lo = result.ladder[static_cast<std::size_t>(rung) - 1];
        ev.s_hi = result.ladder[static_cast<std::size_t>(rung)];
        ev.s_estimate = 0.5 * (ev.s_lo + ev.s_hi);
        ev.location = location;
        ev.participants = participants;
        if (refine) bisect_event(family, ev, location, event_dist, 2, true, cfg, h);
        events.push_back(std::move(ev));
    }

    std::sort(events.begin(), events.end(), [](const ScaleEvent& a, const ScaleEvent& b) {
        if (a.s_estimate != b.s_estimate) return a.s_estimate < b.s_estimate;
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    return events;
}

}  // namespace umbilic
