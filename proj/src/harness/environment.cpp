#include "cmdp/harness/environment.hpp"

#include <cmath>
#include <stdexcept>

namespace cmdp::harness {

using nlohmann::ordered_json;

ordered_json mdp_to_json(const TabularMdp& mdp) {
  ordered_json j;
  j["num_states"] = mdp.num_states();
  j["num_actions"] = mdp.num_actions();
  j["horizon"] = mdp.horizon();
  j["transitions"] = mdp.transitions();
  j["rewards"] = mdp.rewards();
  j["initial_dist"] = mdp.initial_dist();
  return j;
}

TabularMdp mdp_from_json(const ordered_json& j) {
  return TabularMdp(j.at("num_states").get<std::size_t>(),
                    j.at("num_actions").get<std::size_t>(),
                    j.at("horizon").get<std::size_t>(),
                    j.at("transitions").get<std::vector<double>>(),
                    j.at("rewards").get<std::vector<double>>(),
                    j.at("initial_dist").get<std::vector<double>>());
}

EnvModel EnvModel::smooth(InterpolatedSmoothFamily family) {
  SmoothEnv env{family.cmdp.space(),   *family.anchor0,
                *family.anchor1,       family.cmdp.lip_p(),
                family.cmdp.lip_r(),   family.slope,
                family.achieved_lip_p, family.achieved_lip_r};
  return EnvModel(std::variant<SmoothEnv, LinearEnv, HardEnv>(std::move(env)));
}

EnvModel EnvModel::linear(LinearCmdp cmdp) {
  return EnvModel(std::variant<SmoothEnv, LinearEnv, HardEnv>(
      LinearEnv{std::move(cmdp)}));
}

EnvModel EnvModel::hard(HardInstanceCmdp cmdp, BoxSpace space) {
  return EnvModel(std::variant<SmoothEnv, LinearEnv, HardEnv>(
      HardEnv{std::move(cmdp), space}));
}

TabularMdp EnvModel::instantiate(const Context& c) const {
  return std::visit(
      [&c](const auto& env) -> TabularMdp {
        using T = std::decay_t<decltype(env)>;
        if constexpr (std::is_same_v<T, SmoothEnv>) {
          return mix_mdps(env.anchor0, env.anchor1,
                          interpolation_weight(c, env.slope));
        } else if constexpr (std::is_same_v<T, LinearEnv>) {
          return env.cmdp.instantiate(c);
        } else {
          return env.cmdp.instantiate(c);
        }
      },
      env_);
}

std::string EnvModel::family() const {
  return std::visit(
      [](const auto& env) -> std::string {
        using T = std::decay_t<decltype(env)>;
        if constexpr (std::is_same_v<T, SmoothEnv>) {
          return "smooth";
        } else if constexpr (std::is_same_v<T, LinearEnv>) {
          return "linear";
        } else {
          return "hard";
        }
      },
      env_);
}

std::size_t EnvModel::num_states() const {
  return std::visit(
      [](const auto& env) -> std::size_t {
        using T = std::decay_t<decltype(env)>;
        if constexpr (std::is_same_v<T, SmoothEnv>) {
          return env.anchor0.num_states();
        } else if constexpr (std::is_same_v<T, LinearEnv>) {
          return env.cmdp.num_states();
        } else {
          return env.cmdp.layout().num_states();
        }
      },
      env_);
}

std::size_t EnvModel::num_actions() const {
  return std::visit(
      [](const auto& env) -> std::size_t {
        using T = std::decay_t<decltype(env)>;
        if constexpr (std::is_same_v<T, SmoothEnv>) {
          return env.anchor0.num_actions();
        } else if constexpr (std::is_same_v<T, LinearEnv>) {
          return env.cmdp.num_actions();
        } else {
          return env.cmdp.num_actions();
        }
      },
      env_);
}

std::size_t EnvModel::horizon() const {
  return std::visit(
      [](const auto& env) -> std::size_t {
        using T = std::decay_t<decltype(env)>;
        if constexpr (std::is_same_v<T, SmoothEnv>) {
          return env.anchor0.horizon();
        } else {
          return env.cmdp.horizon();
        }
      },
      env_);
}

std::vector<double> EnvModel::initial_dist() const {
  return std::visit(
      [](const auto& env) -> std::vector<double> {
        using T = std::decay_t<decltype(env)>;
        if constexpr (std::is_same_v<T, SmoothEnv>) {
          return env.anchor0.initial_dist();
        } else if constexpr (std::is_same_v<T, LinearEnv>) {
          return env.cmdp.initial_dist();
        } else {
          std::vector<double> init(env.cmdp.layout().num_states(), 0.0);
          init[env.cmdp.layout().start()] = 1.0;
          return init;
        }
      },
      env_);
}

std::size_t EnvModel::context_dim() const {
  return std::visit(
      [](const auto& env) -> std::size_t {
        using T = std::decay_t<decltype(env)>;
        if constexpr (std::is_same_v<T, LinearEnv>) {
          return env.cmdp.dim();
        } else {
          return env.space.dim;
        }
      },
      env_);
}

bool EnvModel::simplex_contexts() const {
  return std::holds_alternative<LinearEnv>(env_);
}

const BoxSpace& EnvModel::box() const {
  if (const auto* s = std::get_if<SmoothEnv>(&env_)) return s->space;
  if (const auto* h = std::get_if<HardEnv>(&env_)) return h->space;
  throw std::logic_error("EnvModel: linear environments have no box space");
}

double EnvModel::lip_p() const {
  return std::visit(
      [](const auto& env) -> double {
        using T = std::decay_t<decltype(env)>;
        if constexpr (std::is_same_v<T, SmoothEnv>) {
          return env.lip_p;
        } else if constexpr (std::is_same_v<T, LinearEnv>) {
          return std::sqrt(static_cast<double>(env.cmdp.dim()));
        } else {
          return 1.0;
        }
      },
      env_);
}

double EnvModel::lip_r() const {
  return std::visit(
      [](const auto& env) -> double {
        using T = std::decay_t<decltype(env)>;
        if constexpr (std::is_same_v<T, SmoothEnv>) {
          return env.lip_r;
        } else if constexpr (std::is_same_v<T, LinearEnv>) {
          return std::sqrt(static_cast<double>(env.cmdp.dim()));
        } else {
          return 0.0;  // rewards of the hard family do not vary with context
        }
      },
      env_);
}

const std::vector<Context>* EnvModel::packing_points() const {
  if (const auto* h = std::get_if<HardEnv>(&env_))
    return &h->cmdp.packing_points();
  return nullptr;
}

nlohmann::ordered_json EnvModel::to_json() const {
  ordered_json j;
  j["family"] = family();
  std::visit(
      [&j](const auto& env) {
        using T = std::decay_t<decltype(env)>;
        if constexpr (std::is_same_v<T, SmoothEnv>) {
          j["space"] = {{"dim", env.space.dim}, {"lo", env.space.lo},
                        {"hi", env.space.hi}};
          j["lip_p"] = env.lip_p;
          j["lip_r"] = env.lip_r;
          j["slope"] = env.slope;
          j["achieved_lip_p"] = env.achieved_lip_p;
          j["achieved_lip_r"] = env.achieved_lip_r;
          j["anchor0"] = mdp_to_json(env.anchor0);
          j["anchor1"] = mdp_to_json(env.anchor1);
        } else if constexpr (std::is_same_v<T, LinearEnv>) {
          auto& bases = j["bases"] = ordered_json::array();
          for (std::size_t i = 0; i < env.cmdp.dim(); ++i)
            bases.push_back(mdp_to_json(env.cmdp.base(i)));
        } else {
          j["space"] = {{"dim", env.space.dim}, {"lo", env.space.lo},
                        {"hi", env.space.hi}};
          j["eps_prime"] = env.cmdp.eps_prime();
          j["num_actions"] = env.cmdp.num_actions();
          j["horizon"] = env.cmdp.horizon();
          auto& points = j["packing_points"] = ordered_json::array();
          for (const auto& p : env.cmdp.packing_points()) points.push_back(p.coords);
          j["assignments"] = env.cmdp.assignments();
        }
      },
      env_);
  return j;
}

EnvModel EnvModel::from_json(const ordered_json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "smooth") {
    BoxSpace space{j.at("space").at("dim").get<std::size_t>(),
                   j.at("space").at("lo").get<double>(),
                   j.at("space").at("hi").get<double>()};
    auto fam = make_interpolated_smooth_cmdp_from_anchors(
        space, mdp_from_json(j.at("anchor0")), mdp_from_json(j.at("anchor1")),
        j.at("lip_p").get<double>(), j.at("lip_r").get<double>());
    return EnvModel::smooth(std::move(fam));
  }
  if (family == "linear") {
    std::vector<TabularMdp> bases;
    for (const auto& jb : j.at("bases")) bases.push_back(mdp_from_json(jb));
    return EnvModel::linear(LinearCmdp(std::move(bases)));
  }
  if (family == "hard") {
    BoxSpace space{j.at("space").at("dim").get<std::size_t>(),
                   j.at("space").at("lo").get<double>(),
                   j.at("space").at("hi").get<double>()};
    std::vector<Context> points;
    for (const auto& jp : j.at("packing_points"))
      points.push_back(Context{jp.get<std::vector<double>>()});
    HardInstanceCmdp cmdp(
        std::move(points),
        j.at("assignments").get<std::vector<std::vector<std::size_t>>>(),
        j.at("eps_prime").get<double>(), j.at("num_actions").get<std::size_t>(),
        j.at("horizon").get<std::size_t>());
    return EnvModel::hard(std::move(cmdp), space);
  }
  throw std::invalid_argument("EnvModel: unknown family '" + family + "'");
}

}  // namespace cmdp::harness
