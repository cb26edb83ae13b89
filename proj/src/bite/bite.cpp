#include "feedplan/bite/bite.hpp"

#include "feedplan/error.hpp"
#include "feedplan/geom/slice.hpp"
#include "feedplan/seed.hpp"

namespace feedplan::bite {

namespace {

constexpr std::uint64_t kBiteStream = 10;

}  // namespace

BiteResult simulate_bite(const geom::TriMesh& food, const Pose& goal, const geom::MouthModel& mouth,
                         int bite_index) {
  if (!geom::is_closed(food)) throw TopologyError("food mesh is not closed");
  BiteResult out;
  out.bite_index = bite_index;
  const Pose to_mouth = mouth.pose.inverse() * goal;
  const geom::TriMesh local = geom::transform_mesh(food, to_mouth);
  const geom::Aabb box = geom::bounding_box(local);
  if (box.min.z() >= 0.0) {
    out.remaining = food;
    return out;
  }
  if (box.max.z() < 0.0) {
    out.consumed_volume = geom::mesh_volume(food);
    return out;
  }
  const geom::SliceResult cut = geom::slice_mesh_by_plane(local, {{0, 0, 0}, {0, 0, 1}});
  out.consumed_volume = cut.inside.empty() ? 0.0 : geom::mesh_volume(cut.inside);
  out.remaining = geom::transform_mesh(cut.outside, to_mouth.inverse());
  return out;
}

geom::TriMesh reanchor(const geom::TriMesh& mesh) {
  if (mesh.empty()) return mesh;
  return geom::transform_mesh(mesh, Pose::from_translation(-geom::volume_centroid(mesh)));
}

void MultibiteConfig::validate() const {
  pipeline.validate();
  if (!(stop_fraction > 0.0 && stop_fraction <= 1.0)) throw InvalidSpecError("stop_fraction must be in (0, 1]");
  if (max_bites < 1 || max_bites > 10) throw InvalidSpecError("max_bites must be in [1, 10]");
  if (!(min_progress >= 0.0 && min_progress < 1.0)) throw InvalidSpecError("min_progress must be in [0, 1)");
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::consumed: return "consumed";
    case StopReason::no_trajectory: return "no_trajectory";
    case StopReason::infeasible_goal: return "infeasible_goal";
    case StopReason::no_progress: return "no_progress";
    case StopReason::max_bites: return "max_bites";
  }
  return "unknown";
}

std::uint64_t bite_seed(std::uint64_t base, int index) {
  return derive_seed(base, kBiteStream, static_cast<std::uint64_t>(index));
}

sample::Scenario next_scenario(const sample::Scenario& scenario, const geom::TriMesh& remaining) {
  const geom::Scene& s = scenario.scene;
  return sample::Scenario{geom::Scene(reanchor(remaining), s.food_on_fork(), s.mouth(), s.proxy_dims()),
                          scenario.start, scenario.goals};
}

MultibiteResult multibite_plan(const sample::Scenario& scenario, const MultibiteConfig& cfg) {
  cfg.validate();
  MultibiteResult out;
  out.initial_volume = scenario.scene.food_volume();
  out.remaining_volume = out.initial_volume;

  sample::Scenario current = scenario;
  for (int i = 0;; ++i) {
    if (out.remaining_volume <= cfg.stop_fraction * out.initial_volume) {
      out.stop = StopReason::consumed;
      return out;
    }
    if (i == cfg.max_bites) {
      out.stop = StopReason::max_bites;
      out.partial = true;
      return out;
    }

    plan::PipelineConfig pc = cfg.pipeline;
    pc.seed = bite_seed(cfg.pipeline.seed, i);
    std::optional<BiteStep> step;
    for (int attempt = 0; attempt < 2 && !step; ++attempt) {
      if (attempt == 1) pc.weights.beta_E *= 2.0;
      plan::PlanOutcome planned;
      try {
        planned = plan::plan_bite(current, pc);
      } catch (const sample::InfeasibleGoalError&) {
        if (i == 0) throw;
        out.stop = StopReason::infeasible_goal;
        out.partial = true;
        return out;
      }
      if (!planned.selected) {
        if (i == 0) throw NoTrajectoryError("no trajectory reached any goal on the first bite");
        out.stop = StopReason::no_trajectory;
        out.partial = true;
        return out;
      }
      BiteResult b = simulate_bite(current.scene.food(), planned.selected->waypoints.back(),
                                   current.scene.mouth(), i);
      if (b.consumed_volume < cfg.min_progress * current.scene.food_volume()) continue;
      step = BiteStep{*planned.selected, std::move(b), pc.seed, attempt == 1, 0.0};
    }
    if (!step) {
      out.stop = StopReason::no_progress;
      out.partial = true;
      return out;
    }

    out.remaining_volume = step->bite.remaining.empty() ? 0.0 : geom::mesh_volume(step->bite.remaining);
    step->remaining_fraction = out.remaining_volume / out.initial_volume;
    const bool eaten = step->bite.remaining.empty();
    if (!eaten) current = next_scenario(current, step->bite.remaining);
    out.bites.push_back(std::move(*step));
    if (eaten) {
      out.stop = StopReason::consumed;
      return out;
    }
  }
}

}  // namespace feedplan::bite
