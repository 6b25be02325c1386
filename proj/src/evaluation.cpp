#include "retseg/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace retseg {

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& truth,
                          const BinaryMask& fov) {
    if (!pred.same_size(truth) || !pred.same_size(fov))
        throw std::invalid_argument("confusion: mask dimensions differ");
    ConfusionCounts c;
    for (std::size_t i = 0; i < fov.size(); ++i) {
        if (!fov.samples()[i]) continue;
        const bool p = pred.samples()[i] != 0;
        const bool t = truth.samples()[i] != 0;
        if (p && t) ++c.Z;
        else if (p && !t) ++c.X;
        else if (!p && t) ++c.Y;
        else ++c.W;
    }
    return c;
}

BasicMetrics basic_metrics(const ConfusionCounts& c) {
    BasicMetrics m;
    if (c.Z + c.Y > 0) m.se = static_cast<double>(c.Z) / static_cast<double>(c.Z + c.Y);
    if (c.X + c.W > 0) m.sp = static_cast<double>(c.W) / static_cast<double>(c.X + c.W);
    if (c.total() > 0)
        m.acc = static_cast<double>(c.Z + c.W) / static_cast<double>(c.total());
    return m;
}

double kappa(const ConfusionCounts& c) {
    const std::int64_t n = c.total();
    if (n == 0) throw std::invalid_argument("kappa: no pixels evaluated");
    const double dn = static_cast<double>(n);
    const double p_o = static_cast<double>(c.Z + c.W) / dn;
    const double p_e = (static_cast<double>(c.Z + c.X) * static_cast<double>(c.Z + c.Y) +
                        static_cast<double>(c.W + c.X) * static_cast<double>(c.W + c.Y)) /
                       (dn * dn);
    if (p_e >= 1.0) return 1.0;
    return (p_o - p_e) / (1.0 - p_e);
}

RocResult roc_auc(const GrayImage& response, const BinaryMask& truth, const BinaryMask& fov) {
    if (!response.same_size(truth) || !response.same_size(fov))
        throw std::invalid_argument("roc_auc: dimensions differ");

    std::int64_t pos = 0, neg = 0;
    for (std::size_t i = 0; i < fov.size(); ++i) {
        if (!fov.samples()[i]) continue;
        (truth.samples()[i] ? pos : neg) += 1;
    }
    if (pos == 0 || neg == 0)
        throw std::runtime_error("roc_auc: truth has a single class inside the FOV, AUC undefined");

    RocResult res;
    for (int step = 0; step <= 100; ++step) {
        const double t = static_cast<double>(100 - step) / 100.0;
        ConfusionCounts c;
        for (std::size_t i = 0; i < fov.size(); ++i) {
            if (!fov.samples()[i]) continue;
            const bool p = response.samples()[i] > t;
            const bool tr = truth.samples()[i] != 0;
            if (p && tr) ++c.Z;
            else if (p && !tr) ++c.X;
            else if (!p && tr) ++c.Y;
            else ++c.W;
        }
        const double zr = static_cast<double>(c.Z) / static_cast<double>(pos);
        const double xr = static_cast<double>(c.X) / static_cast<double>(neg);
        res.curve.points.emplace_back(xr, zr);
        res.curve.thresholds.push_back(t);
    }

    const auto has_point = [&](double x, double z) {
        return std::find(res.curve.points.begin(), res.curve.points.end(),
                         std::make_pair(x, z)) != res.curve.points.end();
    };
    if (!has_point(0.0, 0.0)) {
        res.curve.points.insert(res.curve.points.begin(), {0.0, 0.0});
        res.curve.thresholds.insert(res.curve.thresholds.begin(), 1.0);
    }
    if (!has_point(1.0, 1.0)) {
        res.curve.points.emplace_back(1.0, 1.0);
        res.curve.thresholds.push_back(0.0);
    }

    // The sweep is already monotone in both rates; sorting plus removal of
    // exact duplicates keeps vertical risers as zero-width segments so an
    // anti-predictor integrates to 0, not 0.5.
    auto pts = res.curve.points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    double auc = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        auc += (pts[i].first - pts[i - 1].first) * (pts[i].second + pts[i - 1].second) / 2.0;
    res.auc = auc;
    return res;
}

namespace {

std::string fmt4(const std::optional<double>& v) {
    if (!v) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", *v);
    return buf;
}

using Field = std::optional<double> MetricsRecord::*;
constexpr Field kFields[] = {&MetricsRecord::se, &MetricsRecord::sp, &MetricsRecord::acc,
                             &MetricsRecord::auc, &MetricsRecord::kappa};

}  // namespace

ReportSummary summarize(const std::vector<MetricsRecord>& records) {
    ReportSummary s;
    s.average.image_id = "average";
    s.stddev.image_id = "stddev";
    for (Field f : kFields) {
        std::vector<double> vals;
        for (const auto& r : records)
            if (r.*f) vals.push_back(*(r.*f));
        if (vals.empty()) continue;
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= static_cast<double>(vals.size());
        double var = 0.0;
        if (vals.size() > 1) {
            for (double v : vals) var += (v - mean) * (v - mean);
            var /= static_cast<double>(vals.size() - 1);
        }
        s.average.*f = mean;
        s.stddev.*f = std::sqrt(var);
    }
    return s;
}

void write_report(std::ostream& os, const std::vector<MetricsRecord>& records) {
    os << "image,se,sp,acc,auc,kappa\n";
    const auto row = [&os](const MetricsRecord& r) {
        os << r.image_id << ',' << fmt4(r.se) << ',' << fmt4(r.sp) << ',' << fmt4(r.acc) << ','
           << fmt4(r.auc) << ',' << fmt4(r.kappa) << '\n';
    };
    for (const auto& r : records) row(r);
    const ReportSummary s = summarize(records);
    row(s.average);
    row(s.stddev);
}

void write_report(const std::filesystem::path& path, const std::vector<MetricsRecord>& records) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_report: cannot open " + path.string());
    write_report(os, records);
}

}  // namespace retseg
