#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gi {

/// One merge of the agglomeration. Ids are 1-based: leaves are 1..n and the
/// cluster created by row i (1-based) is n + i.
struct LinkageRow {
    std::size_t left = 0;
    std::size_t right = 0;
    double distance = 0.0;

    bool operator==(const LinkageRow&) const = default;
};

/// The (n - 1) x 3 merge history of a hierarchical clustering.
struct LinkageMatrix {
    std::size_t leaves = 0;
    std::vector<LinkageRow> rows;

    bool operator==(const LinkageMatrix&) const = default;
};

/**
 * Ward's minimum-variance agglomeration of scalar features.
 *
 * Every step merges the pair of active clusters (U, V) with the smallest
 * increase in total within-cluster sum of squares,
 *   |U||V| / (|U| + |V|) * (mean(U) - mean(V))^2,
 * which is also the distance stored in the row. Active clusters are kept in
 * leaf order and a merged cluster takes the slot of its lower-slot member;
 * the row reports (lower slot id, higher slot id). Equal distances resolve
 * to the lexicographically smallest (left, right) id pair.
 *
 * Throws InvalidArgument for fewer than two features or non-finite values.
 */
LinkageMatrix ward_linkage(std::span<const double> features);

enum class ClusterLabel : std::uint8_t { A, B };

/**
 * Result of cutting the tree into two clusters. Cluster A is the left child
 * of the final merge, B the right child.
 */
struct TwoClusterCut {
    std::vector<ClusterLabel> labels;         ///< labels[k - 1] for block k
    std::optional<ClusterLabel> defective;    ///< unset when judged defect-free
    std::vector<std::size_t> defective_blocks; ///< 1-based, ascending
    bool ambiguous = false;                   ///< clusters had equal sizes

    std::size_t count(ClusterLabel label) const noexcept;
};

/// Undoes the last merge of @p z. Leaves `defective` unset.
TwoClusterCut cut_two_clusters(const LinkageMatrix& z);

/**
 * Gap between the two clusters' mean energies relative to the mean energy of
 * all blocks, |mean(A) - mean(B)| / mean(all). 0 when every feature is 0.
 */
double cluster_separation(const TwoClusterCut& cut, std::span<const double> features);

/**
 * Labels the smaller cluster defective.
 *
 * On equal sizes the cut is flagged ambiguous and the cluster whose mean
 * energy lies farther from the median energy wins; if both are equally far
 * the higher-energy cluster wins.
 *
 * With @p tau > 0 the defect-free guard runs first: when
 * cluster_separation() < tau no cluster is labeled defective.
 */
TwoClusterCut minority_rule(TwoClusterCut cut, std::span<const double> features,
                            double tau = 0.0);

} // namespace gi
