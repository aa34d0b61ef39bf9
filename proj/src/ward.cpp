#include "gi/ward.hpp"

#include "gi/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gi {
namespace {

struct Cluster {
    std::size_t id;
    double size;
    double centroid;
    bool active;
};

double ward_cost(const Cluster& u, const Cluster& v) noexcept {
    const double diff = u.centroid - v.centroid;
    return (u.size * v.size / (u.size + v.size)) * diff * diff;
}

// Strict "better than" on (distance, left id, right id).
bool better(double d, std::size_t left, std::size_t right, double best_d, std::size_t best_left,
            std::size_t best_right) noexcept {
    if (d != best_d) {
        return d < best_d;
    }
    if (left != best_left) {
        return left < best_left;
    }
    return right < best_right;
}

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

} // namespace

LinkageMatrix ward_linkage(std::span<const double> features) {
    const std::size_t n = features.size();
    if (n < 2) {
        throw InvalidArgument("ward_linkage: need at least 2 features, got " + std::to_string(n));
    }
    for (double v : features) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("ward_linkage: features must be finite");
        }
    }

    std::vector<Cluster> slots(n);
    for (std::size_t i = 0; i < n; ++i) {
        slots[i] = Cluster{i + 1, 1.0, features[i], true};
    }

    // Nearest-neighbour cache over higher slots: for slot i, the best partner
    // j > i by (distance, right id).
    std::vector<std::size_t> nearest(n, kNone);
    std::vector<double> nearest_d(n, std::numeric_limits<double>::infinity());

    auto rescan = [&](std::size_t i) {
        nearest[i] = kNone;
        nearest_d[i] = std::numeric_limits<double>::infinity();
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!slots[j].active) {
                continue;
            }
            const double d = ward_cost(slots[i], slots[j]);
            if (nearest[i] == kNone ||
                better(d, slots[i].id, slots[j].id, nearest_d[i], slots[i].id,
                       slots[nearest[i]].id)) {
                nearest[i] = j;
                nearest_d[i] = d;
            }
        }
    };

    for (std::size_t i = 0; i + 1 < n; ++i) {
        rescan(i);
    }

    LinkageMatrix z;
    z.leaves = n;
    z.rows.reserve(n - 1);

    for (std::size_t step = 1; step < n; ++step) {
        std::size_t a = kNone;
        for (std::size_t i = 0; i < n; ++i) {
            if (!slots[i].active || nearest[i] == kNone) {
                continue;
            }
            if (a == kNone || better(nearest_d[i], slots[i].id, slots[nearest[i]].id,
                                     nearest_d[a], slots[a].id, slots[nearest[a]].id)) {
                a = i;
            }
        }
        const std::size_t b = nearest[a];
        const double distance = nearest_d[a];
        z.rows.push_back(LinkageRow{slots[a].id, slots[b].id, distance});

        Cluster& merged = slots[a];
        const Cluster& absorbed = slots[b];
        const double size = merged.size + absorbed.size;
        merged.centroid = (merged.size * merged.centroid + absorbed.size * absorbed.centroid) / size;
        merged.size = size;
        merged.id = n + step;
        slots[b].active = false;
        nearest[b] = kNone;

        for (std::size_t i = 0; i < n; ++i) {
            if (!slots[i].active) {
                continue;
            }
            if (i == a || nearest[i] == a || nearest[i] == b) {
                rescan(i);
            } else if (i < a) {
                const double d = ward_cost(slots[i], merged);
                if (nearest[i] == kNone ||
                    better(d, slots[i].id, merged.id, nearest_d[i], slots[i].id,
                           slots[nearest[i]].id)) {
                    nearest[i] = a;
                    nearest_d[i] = d;
                }
            }
        }
    }
    return z;
}

std::size_t TwoClusterCut::count(ClusterLabel label) const noexcept {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

TwoClusterCut cut_two_clusters(const LinkageMatrix& z) {
    const std::size_t n = z.leaves;
    if (n < 2 || z.rows.size() != n - 1) {
        throw InvalidArgument("cut_two_clusters: linkage matrix must have n - 1 rows for n >= 2");
    }

    // children[id - n - 1] for internal nodes.
    auto leaves_under = [&](std::size_t root, ClusterLabel label, std::vector<ClusterLabel>& out) {
        std::vector<std::size_t> stack{root};
        while (!stack.empty()) {
            const std::size_t id = stack.back();
            stack.pop_back();
            if (id == 0 || id >= n + z.rows.size() + 1) {
                throw InvalidArgument("cut_two_clusters: cluster id " + std::to_string(id) +
                                      " out of range");
            }
            if (id <= n) {
                out[id - 1] = label;
            } else {
                const LinkageRow& row = z.rows[id - n - 1];
                stack.push_back(row.left);
                stack.push_back(row.right);
            }
        }
    };

    TwoClusterCut cut;
    cut.labels.assign(n, ClusterLabel::A);
    const LinkageRow& last = z.rows.back();
    leaves_under(last.left, ClusterLabel::A, cut.labels);
    leaves_under(last.right, ClusterLabel::B, cut.labels);
    return cut;
}

namespace {

struct ClusterMeans {
    double a = 0.0;
    double b = 0.0;
    double all = 0.0;
};

ClusterMeans cluster_means(const TwoClusterCut& cut, std::span<const double> features) {
    const std::size_t n = cut.labels.size();
    if (features.size() != n) {
        throw InvalidArgument(std::to_string(features.size()) + " features for " +
                              std::to_string(n) + " cluster labels");
    }
    double sum_a = 0.0;
    double sum_b = 0.0;
    std::size_t size_a = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (cut.labels[i] == ClusterLabel::A) {
            sum_a += features[i];
            ++size_a;
        } else {
            sum_b += features[i];
        }
    }
    const std::size_t size_b = n - size_a;
    if (size_a == 0 || size_b == 0) {
        throw InvalidArgument("both clusters must be non-empty");
    }
    return {sum_a / static_cast<double>(size_a), sum_b / static_cast<double>(size_b),
            (sum_a + sum_b) / static_cast<double>(n)};
}

} // namespace

double cluster_separation(const TwoClusterCut& cut, std::span<const double> features) {
    const ClusterMeans m = cluster_means(cut, features);
    if (m.all <= 0.0) {
        return 0.0;
    }
    return std::abs(m.a - m.b) / m.all;
}

TwoClusterCut minority_rule(TwoClusterCut cut, std::span<const double> features, double tau) {
    const ClusterMeans means = cluster_means(cut, features);
    const std::size_t n = cut.labels.size();
    cut.defective.reset();
    cut.defective_blocks.clear();
    cut.ambiguous = false;

    if (tau > 0.0 && cluster_separation(cut, features) < tau) {
        return cut;
    }

    const std::size_t size_a = cut.count(ClusterLabel::A);
    const std::size_t size_b = n - size_a;
    ClusterLabel defective = size_a < size_b ? ClusterLabel::A : ClusterLabel::B;
    if (size_a == size_b) {
        cut.ambiguous = true;
        std::vector<double> sorted(features.begin(), features.end());
        std::sort(sorted.begin(), sorted.end());
        const double median = n % 2 == 1 ? sorted[n / 2]
                                         : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
        const double dev_a = std::abs(means.a - median);
        const double dev_b = std::abs(means.b - median);
        if (dev_a != dev_b) {
            defective = dev_a > dev_b ? ClusterLabel::A : ClusterLabel::B;
        } else {
            defective = means.a >= means.b ? ClusterLabel::A : ClusterLabel::B;
        }
    }

    cut.defective = defective;
    for (std::size_t i = 0; i < n; ++i) {
        if (cut.labels[i] == defective) {
            cut.defective_blocks.push_back(i + 1);
        }
    }
    return cut;
}

} // namespace gi
