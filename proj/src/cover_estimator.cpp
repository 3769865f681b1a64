#include "cmdp/cover_estimator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cmdp {

double compute_r0(double eps, std::size_t horizon, double lip_p, double lip_r) {
  if (eps <= 0.0) throw std::invalid_argument("compute_r0: eps must be positive");
  if (horizon == 0) throw std::invalid_argument("compute_r0: H must be positive");
  if (lip_p < 0.0 || lip_r < 0.0)
    throw std::invalid_argument("compute_r0: Lipschitz constants must be nonnegative");

  const double inf = std::numeric_limits<double>::infinity();
  const double term_p =
      lip_p > 0.0 ? eps / (8.0 * static_cast<double>(horizon) * lip_p) : inf;
  const double term_r = lip_r > 0.0 ? eps / (8.0 * lip_r) : inf;
  return std::min(term_p, term_r);
}

std::size_t compute_m(double eps, double delta, std::size_t num_states,
                      std::size_t num_actions, std::size_t horizon) {
  // delta > 1 is allowed: the expression stays well-defined (and is exercised
  // with delta = 4/e, where ln(SA/delta) = 1 for S = A = 2)
  if (eps <= 0.0 || eps > 1.0 || delta <= 0.0)
    throw std::invalid_argument("compute_m: requires eps in (0, 1] and delta > 0");
  const double S = static_cast<double>(num_states);
  const double A = static_cast<double>(num_actions);
  const double H = static_cast<double>(horizon);
  const double raw =
      128.0 * (S * std::log(2.0) + std::log(S * A / delta)) * H * H / (eps * eps);
  return static_cast<std::size_t>(std::ceil(raw));
}

CoverEstimator::CoverEstimator(std::size_t num_states, std::size_t num_actions,
                               double ball_radius, std::size_t visit_threshold)
    : num_states_(num_states),
      num_actions_(num_actions),
      ball_radius_(ball_radius),
      visit_threshold_(visit_threshold) {
  if (num_states_ == 0 || num_actions_ == 0)
    throw std::invalid_argument("CoverEstimator: S and A must be positive");
  if (!(ball_radius_ > 0.0))
    throw std::invalid_argument("CoverEstimator: ball radius must be positive");
  if (visit_threshold_ == 0)
    throw std::invalid_argument("CoverEstimator: visit threshold must be positive");
}

CoverEstimator::Ball CoverEstimator::make_ball(const Context& center) const {
  return Ball{center,
              std::vector<std::size_t>(num_states_ * num_actions_, 0),
              std::vector<std::size_t>(num_states_ * num_actions_ * num_states_, 0),
              std::vector<double>(num_states_ * num_actions_, 0.0)};
}

std::optional<std::size_t> CoverEstimator::locate_ball(const Context& c) const {
  std::optional<std::size_t> best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < balls_.size(); ++j) {
    const double d = l2_distance(c, balls_[j].center);
    if (d <= ball_radius_ && d < best_dist) {  // strict <: ties keep lowest j
      best = j;
      best_dist = d;
    }
  }
  return best;
}

std::size_t CoverEstimator::locate_or_create_ball(const Context& c) {
  if (auto j = locate_ball(c)) return *j;
  balls_.push_back(make_ball(c));
  return balls_.size() - 1;
}

std::optional<Prediction> CoverEstimator::predict(const Context& c, std::size_t s,
                                                  std::size_t a) const {
  auto j = locate_ball(c);
  if (!j) return std::nullopt;
  const Ball& ball = balls_[*j];
  const std::size_t sa = s * num_actions_ + a;
  const std::size_t n = ball.n_sa[sa];
  if (n < visit_threshold_) return std::nullopt;

  Prediction pred;
  pred.transition.resize(num_states_);
  for (std::size_t s2 = 0; s2 < num_states_; ++s2)
    pred.transition[s2] = static_cast<double>(ball.n_sas[sa * num_states_ + s2]) /
                          static_cast<double>(n);
  pred.reward = ball.reward_sum[sa] / static_cast<double>(n);
  return pred;
}

void CoverEstimator::update(const Context& c, std::size_t s, std::size_t a,
                            std::size_t s_next, double reward) {
  Ball& ball = balls_[locate_or_create_ball(c)];
  const std::size_t sa = s * num_actions_ + a;
  if (ball.n_sa[sa] >= visit_threshold_) return;  // counts freeze at m
  ball.n_sa[sa] += 1;
  ball.n_sas[sa * num_states_ + s_next] += 1;
  ball.reward_sum[sa] += reward;
  total_updates_ += 1;
}

nlohmann::ordered_json CoverEstimator::snapshot() const {
  nlohmann::ordered_json j;
  j["type"] = "cover";
  j["num_states"] = num_states_;
  j["num_actions"] = num_actions_;
  j["ball_radius"] = ball_radius_;
  j["visit_threshold"] = visit_threshold_;
  j["total_updates"] = total_updates_;
  auto& balls = j["balls"] = nlohmann::ordered_json::array();
  for (const auto& b : balls_) {
    nlohmann::ordered_json jb;
    jb["center"] = b.center.coords;
    jb["n_sa"] = b.n_sa;
    jb["n_sas"] = b.n_sas;
    jb["reward_sum"] = b.reward_sum;
    balls.push_back(std::move(jb));
  }
  return j;
}

CoverEstimator CoverEstimator::from_snapshot(const nlohmann::ordered_json& j) {
  if (j.at("type").get<std::string>() != "cover")
    throw std::invalid_argument("CoverEstimator: snapshot type mismatch");
  CoverEstimator est(j.at("num_states").get<std::size_t>(),
                     j.at("num_actions").get<std::size_t>(),
                     j.at("ball_radius").get<double>(),
                     j.at("visit_threshold").get<std::size_t>());
  est.total_updates_ = j.at("total_updates").get<std::size_t>();
  for (const auto& jb : j.at("balls")) {
    Ball b = est.make_ball(Context{jb.at("center").get<std::vector<double>>()});
    b.n_sa = jb.at("n_sa").get<std::vector<std::size_t>>();
    b.n_sas = jb.at("n_sas").get<std::vector<std::size_t>>();
    b.reward_sum = jb.at("reward_sum").get<std::vector<double>>();
    est.balls_.push_back(std::move(b));
  }
  return est;
}

}  // namespace cmdp
