#include "trivia/ranker.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "trivia/error.hpp"
#include "trivia/solver.hpp"

namespace trivia {

using Json = nlohmann::json;

std::vector<PreferencePair> build_pairs(std::span<const FeatureVector> items) {
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!items[i].grade) {
      throw Error(ErrorKind::InvalidArgument,
                  "item " + std::to_string(i) + " has no grade");
    }
    groups[items[i].group_id].push_back(i);
  }
  std::vector<PreferencePair> pairs;
  for (const auto& [group, members] : groups) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const std::size_t i = members[a];
        const std::size_t j = members[b];
        if (*items[i].grade > *items[j].grade) {
          pairs.push_back({group, i, j});
        } else if (*items[j].grade > *items[i].grade) {
          pairs.push_back({group, j, i});
        }
      }
    }
  }
  return pairs;
}

namespace {

SparseRow difference(const FeatureVector& a, const FeatureVector& b) {
  SparseRow out;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() || ib != b.entries.end()) {
    if (ib == b.entries.end() || (ia != a.entries.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.entries.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, -ib->second);
      ++ib;
    } else {
      const double v = ia->second - ib->second;
      if (v != 0.0) out.emplace_back(ia->first, v);
      ++ia;
      ++ib;
    }
  }
  return out;
}

constexpr std::string_view kModelFormat = "trivia-ranking-model";
constexpr int kModelVersion = 1;

}  // namespace

RankingModel train(std::span<const FeatureVector> items, std::size_t dimension,
                   std::string space_checksum, const TrainOptions& options) {
  if (!(options.c > 0.0)) {
    throw Error(ErrorKind::NonPositiveC, "C must be positive");
  }
  const auto pairs = build_pairs(items);
  if (pairs.empty()) {
    throw Error(ErrorKind::NoPairs, "no same-group pairs with different grades");
  }
  HingeProblem problem;
  problem.dimension = dimension;
  problem.rows.reserve(pairs.size());
  for (const auto& p : pairs) {
    problem.rows.push_back(difference(items[p.higher], items[p.lower]));
  }
  problem.labels.assign(pairs.size(), 1);
  SolverResult solved = solve_hinge_dual(
      problem, {options.c, options.epsilon, options.max_iter, options.seed});

  RankingModel model;
  model.weights = std::move(solved.w);
  model.space_checksum = std::move(space_checksum);
  model.c_param = options.c;
  model.epsilon = options.epsilon;
  auto& report = model.train_report;
  report.iterations = solved.epochs;
  report.final_objective = solved.primal_objective;
  report.dual_objective = solved.dual_objective;
  report.pair_count = pairs.size();
  report.converged = solved.converged;
  report.objective_trace = std::move(solved.objective_trace);
  for (const auto& row : problem.rows) {
    double margin = 0.0;
    for (const auto& [index, value] : row) margin += model.weights[index] * value;
    if (margin < 1.0 - options.epsilon) ++report.violated_pairs;
  }
  return model;
}

RankingModel train(std::span<const FeatureVector> items,
                   const FeatureSpace& space, const TrainOptions& options) {
  if (!space.frozen()) {
    throw Error(ErrorKind::UnfrozenSpace, "train against a frozen space");
  }
  return train(items, space.size(), space.checksum(), options);
}

double score(const RankingModel& model, const FeatureVector& x) {
  return x.dot(model.weights);
}

double score(const RankingModel& model, const FeatureSpace& space,
             const FeatureVector& x) {
  if (model.space_checksum != space.checksum() ||
      model.weights.size() != space.size()) {
    throw Error(ErrorKind::SpaceMismatch,
                "model was trained on feature space " + model.space_checksum);
  }
  return score(model, x);
}

RankedList sort_by_score(std::string group_id, std::vector<RankedEntry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const RankedEntry& a, const RankedEntry& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.index < b.index;
                   });
  return RankedList{std::move(group_id), std::move(entries)};
}

namespace {

void require_one_group(std::span<const FeatureVector> items) {
  for (const auto& x : items) {
    if (x.group_id != items.front().group_id) {
      throw Error(ErrorKind::MixedGroups,
                  items.front().group_id + " vs " + x.group_id);
    }
  }
}

}  // namespace

RankedList rank(const RankingModel& model, std::span<const FeatureVector> items) {
  if (items.empty()) return {};
  require_one_group(items);
  std::vector<RankedEntry> entries;
  entries.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    entries.push_back({items[i].item_id, score(model, items[i]), i});
  }
  return sort_by_score(items.front().group_id, std::move(entries));
}

RankedList rank(const RankingModel& model, const FeatureSpace& space,
                std::span<const FeatureVector> items) {
  if (model.space_checksum != space.checksum() ||
      model.weights.size() != space.size()) {
    throw Error(ErrorKind::SpaceMismatch,
                "model was trained on feature space " + model.space_checksum);
  }
  return rank(model, items);
}

std::string RankingModel::to_json() const {
  const auto& r = train_report;
  Json j{{"format", kModelFormat},
         {"version", kModelVersion},
         {"kernel", kernel},
         {"c_param", c_param},
         {"epsilon", epsilon},
         {"loss_scaling", "C per pair"},
         {"space_checksum", space_checksum},
         {"weights", weights},
         {"train_report",
          {{"iterations", r.iterations},
           {"final_objective", r.final_objective},
           {"dual_objective", r.dual_objective},
           {"violated_pairs", r.violated_pairs},
           {"pair_count", r.pair_count},
           {"converged", r.converged},
           {"objective_trace", r.objective_trace}}}};
  return j.dump(1);
}

RankingModel RankingModel::from_json(std::string_view text) {
  try {
    Json j = Json::parse(text);
    if (j.at("format").get<std::string>() != kModelFormat ||
        j.at("version").get<int>() != kModelVersion) {
      throw Error(ErrorKind::MalformedRecord, "not a version 1 ranking model");
    }
    RankingModel m;
    m.kernel = j.at("kernel").get<std::string>();
    if (m.kernel != "linear") {
      throw Error(ErrorKind::MalformedRecord, "unsupported kernel " + m.kernel);
    }
    m.c_param = j.at("c_param").get<double>();
    m.epsilon = j.at("epsilon").get<double>();
    if (!(m.c_param > 0.0)) throw Error(ErrorKind::NonPositiveC, "c_param");
    m.space_checksum = j.at("space_checksum").get<std::string>();
    m.weights = j.at("weights").get<std::vector<double>>();
    const auto& r = j.at("train_report");
    auto& out = m.train_report;
    out.iterations = r.at("iterations").get<int>();
    out.final_objective = r.at("final_objective").get<double>();
    out.dual_objective = r.value("dual_objective", 0.0);
    out.violated_pairs = r.at("violated_pairs").get<std::size_t>();
    out.pair_count = r.value("pair_count", std::size_t{0});
    out.converged = r.value("converged", false);
    out.objective_trace = r.value("objective_trace", std::vector<double>{});
    return m;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::MalformedRecord, e.what());
  }
}

void RankingModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << to_json() << '\n';
}

RankingModel RankingModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

}  // namespace trivia
