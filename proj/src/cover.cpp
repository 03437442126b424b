#include "nagata/cover.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nagata {

namespace {

struct FlatSet {
    const PointSet* points;
    int color;
};

std::vector<FlatSet> flatten(const ColoredCover& cover) {
    std::vector<FlatSet> sets;
    for (int c = 0; c < cover.color_count(); ++c)
        for (const PointSet& s : cover.classes[c]) sets.push_back({&s, c});
    return sets;
}

}  // namespace

std::size_t ColoredCover::set_count() const {
    std::size_t n = 0;
    for (const auto& cls : classes) n += cls.size();
    return n;
}

void ColoredCover::validate(const FiniteMetricSpace& space) const {
    for (PointId p : domain)
        if (p >= space.point_count()) throw ContractViolation("cover domain point out of range");
    if (!std::is_sorted(domain.begin(), domain.end()))
        throw ContractViolation("cover domain is not sorted");
    for (const auto& cls : classes)
        for (const PointSet& s : cls) {
            if (s.empty()) throw ContractViolation("cover stores an empty set");
            if (!std::is_sorted(s.begin(), s.end()))
                throw ContractViolation("cover set is not sorted");
            for (PointId p : s)
                if (!set_contains(domain, p))
                    throw ContractViolation("cover set escapes its domain at point " +
                                            std::to_string(p));
        }
}

bool is_cover(const FiniteMetricSpace& space, const ColoredCover& cover) {
    cover.validate(space);
    std::vector<char> hit(space.point_count(), 0);
    for (const auto& cls : cover.classes)
        for (const PointSet& s : cls)
            for (PointId p : s) hit[p] = 1;
    for (PointId p : cover.domain)
        if (!hit[p]) return false;
    return true;
}

double max_diameter(const FiniteMetricSpace& space, const ColoredCover& cover) {
    const std::vector<FlatSet> sets = flatten(cover);
    double best = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(max : best)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(sets.size()); ++i)
        best = std::max(best, subset_diameter(space, *sets[i].points));
    return best;
}

std::vector<double> min_separation(const FiniteMetricSpace& space, const ColoredCover& cover) {
    std::vector<double> seps(cover.color_count(), kInf);
    const std::vector<FlatSet> sets = flatten(cover);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(sets.size()); ++i) {
        const int color = sets[i].color;
        if (cover.classes[color].size() < 2) continue;
        const std::vector<double> field = space.distance_field(*sets[i].points, kInf);
        double local = kInf;
        for (const FlatSet& other : sets) {
            if (other.color != color || other.points == sets[i].points) continue;
            for (PointId q : *other.points) local = std::min(local, field[q]);
        }
#ifdef _OPENMP
#pragma omp critical(nagata_min_separation)
#endif
        seps[color] = std::min(seps[color], local);
    }
    return seps;
}

int multiplicity(const FiniteMetricSpace& space, const ColoredCover& cover, double s) {
    if (!(s > 0.0)) throw ArgumentError("multiplicity: scale must be positive");
    const std::vector<FlatSet> sets = flatten(cover);
    std::vector<std::atomic<int>> count(space.point_count());
    for (auto& c : count) c.store(0, std::memory_order_relaxed);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(sets.size()); ++i) {
        const std::vector<double> field = space.distance_field(*sets[i].points, s);
        for (std::size_t p = 0; p < field.size(); ++p)
            if (field[p] <= s) count[p].fetch_add(1, std::memory_order_relaxed);
    }
    int best = 0;
    for (const auto& c : count) best = std::max(best, c.load(std::memory_order_relaxed));
    return best;
}

CoverCertificate certify(const FiniteMetricSpace& space, const ColoredCover& cover, double s) {
    if (!(s > 0.0)) throw ArgumentError("certify: scale must be positive");
    CoverCertificate cert;
    cert.is_cover = is_cover(space, cover);
    cert.color_count = cover.color_count();
    cert.per_color_separation = min_separation(space, cover);
    cert.max_diameter = max_diameter(space, cover);
    cert.multiplicity_scale = s;
    cert.multiplicity = multiplicity(space, cover, s);
    return cert;
}

double measured_lipschitz(const FiniteMetricSpace& space, const RealValuedFunction& f) {
    const std::size_t n = space.point_count();
    if (f.values.size() != n) throw ArgumentError("measured_lipschitz: size mismatch");
    if (n < 2) return 0.0;
    double best = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) reduction(max : best)
#endif
    for (std::int64_t p = 0; p < static_cast<std::int64_t>(n) - 1; ++p) {
        std::vector<PointId> rest;
        rest.reserve(n - p - 1);
        for (std::size_t q = p + 1; q < n; ++q) rest.push_back(static_cast<PointId>(q));
        const std::vector<double> d = space.distances_to(static_cast<PointId>(p), rest);
        for (std::size_t i = 0; i < rest.size(); ++i) {
            const double df = std::abs(f.values[p] - f.values[rest[i]]);
            if (df == 0.0) continue;
            best = std::max(best, d[i] > 0.0 ? df / d[i] : kInf);
        }
    }
    return best;
}

double edge_lipschitz_bound(const GraphMetricSpace& space, const RealValuedFunction& f) {
    if (f.values.size() != space.point_count())
        throw ArgumentError("edge_lipschitz_bound: size mismatch");
    double best = 0.0;
    for (const Edge& e : space.graph().edges)
        best = std::max(best, std::abs(f.values[e.u] - f.values[e.v]) / e.weight);
    return best;
}

namespace reference {

CoverCertificate certify(const FiniteMetricSpace& space, const ColoredCover& cover, double s) {
    if (!(s > 0.0)) throw ArgumentError("certify: scale must be positive");
    cover.validate(space);
    const std::size_t n = space.point_count();
    CoverCertificate cert;
    cert.color_count = cover.color_count();
    cert.multiplicity_scale = s;

    cert.is_cover = true;
    for (PointId p : cover.domain) {
        bool covered = false;
        for (const auto& cls : cover.classes)
            for (const PointSet& set : cls)
                for (PointId q : set)
                    if (q == p) covered = true;
        if (!covered) cert.is_cover = false;
    }

    cert.max_diameter = 0.0;
    for (const auto& cls : cover.classes)
        for (const PointSet& set : cls)
            for (PointId a : set)
                for (PointId b : set)
                    cert.max_diameter = std::max(cert.max_diameter, space.distance(a, b));

    cert.per_color_separation.assign(cover.classes.size(), kInf);
    for (std::size_t c = 0; c < cover.classes.size(); ++c) {
        const auto& cls = cover.classes[c];
        for (std::size_t i = 0; i < cls.size(); ++i)
            for (std::size_t j = i + 1; j < cls.size(); ++j)
                for (PointId a : cls[i])
                    for (PointId b : cls[j])
                        cert.per_color_separation[c] =
                            std::min(cert.per_color_separation[c], space.distance(a, b));
    }

    cert.multiplicity = 0;
    for (std::size_t p = 0; p < n; ++p) {
        int met = 0;
        for (const auto& cls : cover.classes)
            for (const PointSet& set : cls) {
                double dist = kInf;
                for (PointId q : set)
                    dist = std::min(dist, space.distance(static_cast<PointId>(p), q));
                if (dist <= s) ++met;
            }
        cert.multiplicity = std::max(cert.multiplicity, met);
    }
    return cert;
}

double measured_lipschitz(const FiniteMetricSpace& space, const RealValuedFunction& f) {
    const std::size_t n = space.point_count();
    if (n < 2) return 0.0;
    double best = 0.0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            const double df = std::abs(f.values[p] - f.values[q]);
            if (df == 0.0) continue;
            const double d = space.distance(static_cast<PointId>(p), static_cast<PointId>(q));
            best = std::max(best, d > 0.0 ? df / d : kInf);
        }
    return best;
}

}  // namespace reference

}  // namespace nagata
