#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "cpk/check.hpp"

namespace cpk {

// Rooted binary tree with integer-labeled leaves. Every internal node has
// exactly two children. Nodes are created bottom-up (add_leaf/add_internal)
// or by the leaf-insertion edits used by the tree enumerator.
class RootedBinaryTree {
public:
    static constexpr int npos = -1;

    RootedBinaryTree() = default;

    int add_leaf(int label) {
        CPK_CHECK(label >= 0);
        int v = static_cast<int>(nodes_.size());
        nodes_.push_back(Node{npos, npos, npos, label});
        if (label >= static_cast<int>(label_node_.size()))
            label_node_.resize(label + 1, npos);
        CPK_CHECK_MSG(label_node_[label] == npos, "duplicate leaf label");
        label_node_[label] = v;
        ++leaf_count_;
        return v;
    }

    int add_internal(int a, int b) {
        CPK_CHECK(a != b && valid_node(a) && valid_node(b));
        CPK_CHECK(nodes_[a].parent == npos && nodes_[b].parent == npos);
        int v = static_cast<int>(nodes_.size());
        nodes_.push_back(Node{npos, a, b, npos});
        nodes_[a].parent = v;
        nodes_[b].parent = v;
        return v;
    }

    void set_root(int v) {
        CPK_CHECK(valid_node(v) && nodes_[v].parent == npos);
        root_ = v;
    }

    // Subdivide the edge above `child` with a fresh node and hang the
    // parentless subtree rooted at `sub` there; returns the fresh node.
    int insert_node_on_edge(int sub, int child) {
        CPK_CHECK(valid_node(sub) && valid_node(child) && child != root_);
        CPK_CHECK(nodes_[sub].parent == npos);
        int p = nodes_[child].parent;
        int mid = static_cast<int>(nodes_.size());
        nodes_.push_back(Node{p, child, sub, npos});
        if (nodes_[p].left == child)
            nodes_[p].left = mid;
        else
            nodes_[p].right = mid;
        nodes_[child].parent = mid;
        nodes_[sub].parent = mid;
        return mid;
    }

    int insert_node_above_root(int sub) {
        CPK_CHECK(valid_node(sub) && root_ != npos);
        CPK_CHECK(nodes_[sub].parent == npos);
        int top = static_cast<int>(nodes_.size());
        nodes_.push_back(Node{npos, root_, sub, npos});
        nodes_[root_].parent = top;
        nodes_[sub].parent = top;
        root_ = top;
        return top;
    }

    void insert_leaf_on_edge(int leaf, int child) { insert_node_on_edge(leaf, child); }

    void insert_leaf_above_root(int leaf) { insert_node_above_root(leaf); }

    int root() const { return root_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    int leaf_count() const { return leaf_count_; }
    bool is_leaf(int v) const { return nodes_[v].label != npos; }
    int label(int v) const { return nodes_[v].label; }
    int parent(int v) const { return nodes_[v].parent; }
    int left(int v) const { return nodes_[v].left; }
    int right(int v) const { return nodes_[v].right; }

    int node_of_label(int lab) const {
        if (lab < 0 || lab >= static_cast<int>(label_node_.size())) return npos;
        return label_node_[lab];
    }

    bool has_label(int lab) const { return node_of_label(lab) != npos; }

    std::vector<int> leaf_labels() const {
        std::vector<int> out;
        out.reserve(leaf_count_);
        for (const auto& nd : nodes_)
            if (nd.label != npos) out.push_back(nd.label);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<int> leaves_below(int v) const {
        std::vector<int> out, stack{v};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            if (is_leaf(u)) {
                out.push_back(nodes_[u].label);
            } else {
                stack.push_back(nodes_[u].left);
                stack.push_back(nodes_[u].right);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    int depth(int v) const {
        int d = 0;
        while (nodes_[v].parent != npos) {
            v = nodes_[v].parent;
            ++d;
        }
        return d;
    }

    int lca(int u, int v) const {
        int du = depth(u), dv = depth(v);
        while (du > dv) {
            u = nodes_[u].parent;
            --du;
        }
        while (dv > du) {
            v = nodes_[v].parent;
            --dv;
        }
        while (u != v) {
            u = nodes_[u].parent;
            v = nodes_[v].parent;
        }
        return u;
    }

    int lca_labels(int a, int b) const {
        int u = node_of_label(a), v = node_of_label(b);
        CPK_CHECK(u != npos && v != npos);
        return lca(u, v);
    }

    // The leaf of {a,b,c} isolated at the top split of the induced subtree.
    int isolated_label(int a, int b, int c) const {
        int dab = depth(lca_labels(a, b));
        int dac = depth(lca_labels(a, c));
        int dbc = depth(lca_labels(b, c));
        if (dab > dac && dab > dbc) return c;
        if (dac > dab && dac > dbc) return b;
        CPK_CHECK_MSG(dbc > dab && dbc > dac, "non-binary triple split");
        return a;
    }

    // True iff the induced subtree on {a,b,c} is ab|c.
    bool displays(int a, int b, int c) const { return isolated_label(a, b, c) == c; }

    std::string newick() const {
        CPK_CHECK(root_ != npos);
        std::vector<int> minlab(nodes_.size(), 0);
        min_labels(minlab);
        std::string out;
        newick_rec(root_, minlab, out);
        return out;
    }

    void validate() const {
        CPK_CHECK(root_ != npos && nodes_[root_].parent == npos);
        int leaves = 0, internals = 0, seen = 0;
        std::vector<int> stack{root_};
        std::vector<char> mark(nodes_.size(), 0);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            CPK_CHECK(!mark[v]);
            mark[v] = 1;
            ++seen;
            if (is_leaf(v)) {
                CPK_CHECK(nodes_[v].left == npos && nodes_[v].right == npos);
                ++leaves;
            } else {
                int l = nodes_[v].left, r = nodes_[v].right;
                CPK_CHECK(l != npos && r != npos);
                CPK_CHECK(nodes_[l].parent == v && nodes_[r].parent == v);
                stack.push_back(l);
                stack.push_back(r);
                ++internals;
            }
        }
        CPK_CHECK(seen == node_count());
        CPK_CHECK(leaves == leaf_count_);
        CPK_CHECK(leaves == 0 || internals == leaves - 1);
    }

private:
    struct Node {
        int parent = npos, left = npos, right = npos, label = npos;
    };

    bool valid_node(int v) const { return v >= 0 && v < static_cast<int>(nodes_.size()); }

    void min_labels(std::vector<int>& out) const {
        // post-order without recursion: nodes were appended after their
        // children only for add_internal trees; insertions break that, so do
        // an explicit two-pass stack walk
        std::vector<int> order, stack{root_};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            order.push_back(v);
            if (!is_leaf(v)) {
                stack.push_back(nodes_[v].left);
                stack.push_back(nodes_[v].right);
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int v = *it;
            out[v] = is_leaf(v) ? nodes_[v].label
                                : std::min(out[nodes_[v].left], out[nodes_[v].right]);
        }
    }

    void newick_rec(int v, const std::vector<int>& minlab, std::string& out) const {
        if (is_leaf(v)) {
            out += std::to_string(nodes_[v].label);
            return;
        }
        int a = nodes_[v].left, b = nodes_[v].right;
        if (minlab[b] < minlab[a]) std::swap(a, b);
        out += '(';
        newick_rec(a, minlab, out);
        out += ',';
        newick_rec(b, minlab, out);
        out += ')';
    }

    std::vector<Node> nodes_;
    std::vector<int> label_node_;
    int root_ = npos;
    int leaf_count_ = 0;
};

// Left comb over the given labels in ascending order: ((l0,l1),l2),l3 ...
inline RootedBinaryTree left_comb(std::vector<int> labels) {
    CPK_CHECK(!labels.empty());
    std::sort(labels.begin(), labels.end());
    RootedBinaryTree t;
    int cur = t.add_leaf(labels[0]);
    for (std::size_t i = 1; i < labels.size(); ++i)
        cur = t.add_internal(cur, t.add_leaf(labels[i]));
    t.set_root(cur);
    return t;
}

namespace detail {
inline void enumerate_trees_rec(const RootedBinaryTree& t, int next, int n,
                                const std::function<void(const RootedBinaryTree&)>& f) {
    if (next == n) {
        f(t);
        return;
    }
    for (int v = 0; v < t.node_count(); ++v) {
        if (v == t.root()) continue;
        RootedBinaryTree s = t;
        s.insert_leaf_on_edge(s.add_leaf(next), v);
        enumerate_trees_rec(s, next + 1, n, f);
    }
    RootedBinaryTree s = t;
    s.insert_leaf_above_root(s.add_leaf(next));
    enumerate_trees_rec(s, next + 1, n, f);
}
}  // namespace detail

// Visits every rooted binary tree over leaves 0..n-1; (2n-3)!! of them.
inline void enumerate_binary_trees(int n, const std::function<void(const RootedBinaryTree&)>& f) {
    CPK_CHECK(n >= 1);
    RootedBinaryTree t;
    t.set_root(t.add_leaf(0));
    detail::enumerate_trees_rec(t, 1, n, f);
}

inline std::vector<RootedBinaryTree> all_binary_trees(int n) {
    std::vector<RootedBinaryTree> out;
    enumerate_binary_trees(n, [&](const RootedBinaryTree& t) { out.push_back(t); });
    return out;
}

}  // namespace cpk
