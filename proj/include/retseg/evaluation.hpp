#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "retseg/image.hpp"

namespace retseg {

/// Pixel confusion quadruple: Z true positives, X false positives,
/// W true negatives, Y false negatives. Z+X+W+Y equals the number of FOV
/// pixels evaluated.
struct ConfusionCounts {
    std::int64_t Z = 0;
    std::int64_t X = 0;
    std::int64_t W = 0;
    std::int64_t Y = 0;

    std::int64_t total() const { return Z + X + W + Y; }
};

/// Sensitivity/specificity/accuracy; a metric with a zero denominator is
/// reported as absent, never as 0.
struct BasicMetrics {
    std::optional<double> se;
    std::optional<double> sp;
    std::optional<double> acc;
};

/// Per-image evaluation record, one CSV row.
struct MetricsRecord {
    std::string image_id;
    std::optional<double> se;
    std::optional<double> sp;
    std::optional<double> acc;
    std::optional<double> auc;
    std::optional<double> kappa;
};

/// ROC curve traced by the threshold sweep; rates in [0,1], endpoints (0,0)
/// and (1,1) included.
struct RocCurve {
    std::vector<std::pair<double, double>> points;  // (XR = 1-Sp, ZR = Se)
    std::vector<double> thresholds;
};

struct RocResult {
    RocCurve curve;
    double auc = 0.0;
};

/// Tally prediction against truth over FOV pixels only.
ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& truth, const BinaryMask& fov);

/// Se = Z/(Z+Y), Sp = W/(X+W), Acc = (Z+W)/(Z+X+Y+W).
BasicMetrics basic_metrics(const ConfusionCounts& c);

/// Cohen's kappa, (p_o - p_e)/(1 - p_e) with
/// p_o = (Z+W)/N and p_e = [(Z+X)(Z+Y) + (W+X)(W+Y)]/N^2.
/// Returns 1 when p_e = 1 (both raters constant and agreeing). Throws for
/// N = 0.
double kappa(const ConfusionCounts& c);

/// ROC/AUC protocol: binarize the normalized response at t = 1.00, 0.99, ...,
/// 0.00 (101 thresholds, prediction = sample > t), record (XR, ZR) per step,
/// complete the endpoints, and integrate by the trapezoid rule over the curve
/// sorted by XR. Throws when the truth has a single class inside the FOV.
RocResult roc_auc(const GrayImage& response, const BinaryMask& truth, const BinaryMask& fov);

/// Column-wise unweighted mean and sample standard deviation over the records
/// where the metric is defined (stddev is 0 for a single record).
struct ReportSummary {
    MetricsRecord average;
    MetricsRecord stddev;
};

ReportSummary summarize(const std::vector<MetricsRecord>& records);

/// CSV report: header image,se,sp,acc,auc,kappa, one row per record, then
/// average and stddev rows. Values print with 4 decimals; absent metrics
/// print as nan.
void write_report(std::ostream& os, const std::vector<MetricsRecord>& records);
void write_report(const std::filesystem::path& path, const std::vector<MetricsRecord>& records);

}  // namespace retseg
