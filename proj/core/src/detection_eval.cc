// Copyright 2026 The egoscene Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "egoscene/box_iou.h"
#include "egoscene/errors.h"
#include "egoscene/evaluation.h"

namespace egoscene {
namespace {

struct RankedPrediction {
  double score;
  int scene;
  int index;
};

// iou[p][g]; negative for pairs of different classes.
using IouMatrix = std::vector<std::vector<double>>;

IouMatrix SceneIou(const std::vector<Detection>& preds,
                   const std::vector<GroundTruthBox>& gts) {
  IouMatrix m(preds.size(), std::vector<double>(gts.size(), -1.0));
  for (std::size_t p = 0; p < preds.size(); ++p) {
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (preds[p].class_id == gts[g].class_id) {
        m[p][g] = BoxIoU(preds[p].box, gts[g].box);
      }
    }
  }
  return m;
}

// Descending score; ties keep (scene, index) order.
void Rank(std::vector<RankedPrediction>& list) {
  std::stable_sort(list.begin(), list.end(),
                   [](const RankedPrediction& x, const RankedPrediction& y) {
                     return x.score > y.score;
                   });
}

// Greedy matching of a ranked list against the ground truth of one class.
// `gt_of_class[s]` lists the candidate GT indices of scene s.
std::vector<bool> MatchRanked(const std::vector<RankedPrediction>& ranked,
                              const std::vector<IouMatrix>& iou,
                              const std::vector<std::vector<int>>& gt_of_class,
                              double threshold) {
  std::vector<std::vector<bool>> used(gt_of_class.size());
  for (std::size_t s = 0; s < gt_of_class.size(); ++s) {
    used[s].assign(gt_of_class[s].size(), false);
  }
  std::vector<bool> tp;
  tp.reserve(ranked.size());
  for (const RankedPrediction& r : ranked) {
    const auto& candidates = gt_of_class[r.scene];
    int best = -1;
    double best_iou = -1.0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (used[r.scene][k]) continue;
      const double v = iou[r.scene][r.index][candidates[k]];
      if (v >= threshold && v > best_iou) {
        best_iou = v;
        best = int(k);
      }
    }
    if (best >= 0) used[r.scene][best] = true;
    tp.push_back(best >= 0);
  }
  return tp;
}

std::vector<IouMatrix> AllSceneIou(
    const std::vector<std::vector<Detection>>& preds,
    const std::vector<std::vector<GroundTruthBox>>& gts, int num_threads) {
  std::vector<IouMatrix> out(preds.size());
  const int workers =
      std::max(1, std::min<int>(num_threads, int(preds.size())));
  if (workers == 1) {
    for (std::size_t s = 0; s < preds.size(); ++s) {
      out[s] = SceneIou(preds[s], gts[s]);
    }
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t s = next++; s < preds.size(); s = next++) {
          out[s] = SceneIou(preds[s], gts[s]);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

void CheckThresholds(const std::vector<double>& thresholds) {
  if (thresholds.empty()) throw InvalidArgument("no IoU thresholds given");
  for (double t : thresholds) {
    if (!(t > 0.0 && t <= 1.0)) {
      throw InvalidArgument("IoU thresholds must lie in (0, 1]");
    }
  }
}

double Mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / double(v.size());
}

}  // namespace

double AveragePrecision(const std::vector<bool>& true_positive, int num_gt) {
  if (num_gt <= 0) return 0.0;
  std::vector<double> precision_at_tp;
  int tp = 0;
  for (std::size_t k = 0; k < true_positive.size(); ++k) {
    if (!true_positive[k]) continue;
    ++tp;
    precision_at_tp.push_back(double(tp) / double(k + 1));
  }
  for (std::size_t i = precision_at_tp.size(); i-- > 1;) {
    precision_at_tp[i - 1] = std::max(precision_at_tp[i - 1], precision_at_tp[i]);
  }
  double sum = 0.0;
  for (double p : precision_at_tp) sum += p;
  return sum / double(num_gt);
}

EvalReport DetectionAP(const std::vector<std::vector<Detection>>& preds,
                       const std::vector<std::vector<GroundTruthBox>>& gts,
                       const DetectionEvalConfig& config) {
  if (preds.size() != gts.size()) {
    throw InvalidArgument("DetectionAP: prediction and ground-truth scene "
                          "counts differ");
  }
  CheckThresholds(config.thresholds);
  const std::set<int> vocab(config.class_ids.begin(), config.class_ids.end());
  for (std::size_t s = 0; s < preds.size(); ++s) {
    for (const Detection& d : preds[s]) {
      if (!vocab.count(d.class_id)) {
        throw InvalidArgument("DetectionAP: unknown class id " +
                              std::to_string(d.class_id));
      }
      if (!std::isfinite(d.score)) {
        throw InvalidArgument("DetectionAP: non-finite score");
      }
    }
    for (const GroundTruthBox& g : gts[s]) {
      if (!vocab.count(g.class_id)) {
        throw InvalidArgument("DetectionAP: unknown class id " +
                              std::to_string(g.class_id));
      }
    }
  }

  const std::vector<IouMatrix> iou =
      AllSceneIou(preds, gts, config.num_threads);
  const std::size_t nt = config.thresholds.size();

  EvalReport report;
  report.thresholds = config.thresholds;
  for (int c : vocab) {
    ClassResult res;
    std::vector<RankedPrediction> ranked;
    std::vector<std::vector<int>> gt_of_class(gts.size());
    for (std::size_t s = 0; s < preds.size(); ++s) {
      for (std::size_t p = 0; p < preds[s].size(); ++p) {
        if (preds[s][p].class_id == c) {
          ranked.push_back({preds[s][p].score, int(s), int(p)});
        }
      }
      for (std::size_t g = 0; g < gts[s].size(); ++g) {
        if (gts[s][g].class_id == c) gt_of_class[s].push_back(int(g));
      }
      res.num_gt += int(gt_of_class[s].size());
    }
    res.num_pred = int(ranked.size());
    Rank(ranked);
    for (std::size_t t = 0; t < nt; ++t) {
      const std::vector<bool> tp =
          MatchRanked(ranked, iou, gt_of_class, config.thresholds[t]);
      res.ap.push_back(AveragePrecision(tp, res.num_gt));
      const auto hits = std::count(tp.begin(), tp.end(), true);
      res.ar.push_back(res.num_gt > 0 ? double(hits) / res.num_gt : 0.0);
    }
    report.per_class.emplace(c, std::move(res));
  }

  std::set<std::string> splits;
  for (const auto& [c, name] : config.split_of) splits.insert(name);
  report.mean_ap.resize(nt);
  report.mean_ar.resize(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    std::vector<double> ap, ar;
    std::map<std::string, std::vector<double>> split_ap, split_ar;
    for (const auto& [c, res] : report.per_class) {
      if (res.num_gt == 0) continue;
      ap.push_back(res.ap[t]);
      ar.push_back(res.ar[t]);
      if (auto it = config.split_of.find(c); it != config.split_of.end()) {
        split_ap[it->second].push_back(res.ap[t]);
        split_ar[it->second].push_back(res.ar[t]);
      }
    }
    report.mean_ap[t] = Mean(ap);
    report.mean_ar[t] = Mean(ar);
    for (const std::string& name : splits) {
      report.split_mean_ap[name].push_back(Mean(split_ap[name]));
      report.split_mean_ar[name].push_back(Mean(split_ar[name]));
    }
  }
  return report;
}

GroundingReport GroundingEval(
    const std::vector<std::vector<ScoredBox>>& preds,
    const std::vector<OrientedBox3D>& gts,
    const std::vector<std::vector<std::string>>& tags,
    const std::vector<double>& thresholds) {
  if (preds.size() != gts.size()) {
    throw InvalidArgument("GroundingEval: one prediction list per prompt "
                          "required");
  }
  if (!tags.empty() && tags.size() != gts.size()) {
    throw InvalidArgument("GroundingEval: tag list length differs from the "
                          "prompt count");
  }
  CheckThresholds(thresholds);

  std::vector<IouMatrix> iou(gts.size());
  for (std::size_t i = 0; i < gts.size(); ++i) {
    iou[i].resize(preds[i].size());
    for (std::size_t p = 0; p < preds[i].size(); ++p) {
      if (!std::isfinite(preds[i][p].score)) {
        throw InvalidArgument("GroundingEval: non-finite score");
      }
      iou[i][p] = {BoxIoU(preds[i][p].box, gts[i])};
    }
  }

  auto ap_over = [&](const std::vector<int>& prompts) {
    std::vector<RankedPrediction> ranked;
    std::vector<std::vector<int>> gt_of(gts.size());
    for (int i : prompts) {
      gt_of[i] = {0};
      for (std::size_t p = 0; p < preds[i].size(); ++p) {
        ranked.push_back({preds[i][p].score, i, int(p)});
      }
    }
    Rank(ranked);
    std::vector<double> out;
    for (double t : thresholds) {
      out.push_back(AveragePrecision(MatchRanked(ranked, iou, gt_of, t),
                                     int(prompts.size())));
    }
    return out;
  };

  GroundingReport report;
  report.thresholds = thresholds;
  report.num_prompts = int(gts.size());
  std::vector<int> all(gts.size());
  for (std::size_t i = 0; i < gts.size(); ++i) all[i] = int(i);
  report.ap = ap_over(all);
  std::map<std::string, std::vector<int>> by_tag;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    for (const std::string& tag : std::set<std::string>(tags[i].begin(),
                                                        tags[i].end())) {
      by_tag[tag].push_back(int(i));
    }
  }
  for (const auto& [tag, prompts] : by_tag) {
    report.ap_by_tag[tag] = ap_over(prompts);
  }
  return report;
}

}  // namespace egoscene
