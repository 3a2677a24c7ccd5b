#include "mmb/trees.hpp"

#include <functional>
#include <set>

#include "mmb/errors.hpp"

namespace mmb {

namespace {

TreeP make_leaf(int label) {
    auto t = std::make_shared<TreeNode>();
    t->leaf = label;
    t->mask = Mask(1) << (label - 1);
    return t;
}

TreeP make_join(TreeP a, TreeP b) {
    auto t = std::make_shared<TreeNode>();
    t->mask = a->mask | b->mask;
    t->left = std::move(a);
    t->right = std::move(b);
    return t;
}

int min_label(const TreeP& t) { return __builtin_ctz(t->mask) + 1; }

TreeP canon(const TreeP& t) {
    if (t->leaf) return t;
    TreeP a = canon(t->left), b = canon(t->right);
    if (min_label(a) > min_label(b)) std::swap(a, b);
    return make_join(a, b);
}

void print(const TreeP& t, bool wide, std::string& out) {
    if (t->leaf) {
        if (wide && !out.empty() && out.back() != '(') out += ' ';
        out += std::to_string(t->leaf);
        return;
    }
    if (wide && !out.empty() && out.back() != '(') out += ' ';
    out += '(';
    print(t->left, wide, out);
    print(t->right, wide, out);
    out += ')';
}

// Trees with leaf k grafted onto every edge of t, the root edge included.
std::vector<TreeP> graft(const TreeP& t, int k) {
    std::vector<TreeP> out{make_join(t, make_leaf(k))};
    if (t->leaf) return out;
    for (const TreeP& l : graft(t->left, k)) out.push_back(make_join(l, t->right));
    for (const TreeP& r : graft(t->right, k)) out.push_back(make_join(t->left, r));
    return out;
}

std::vector<TreeP> flips(const TreeP& t) {
    if (t->leaf) return {t};
    std::vector<TreeP> out;
    for (const TreeP& a : flips(t->left))
        for (const TreeP& b : flips(t->right)) {
            out.push_back(make_join(a, b));
            out.push_back(make_join(b, a));
        }
    return out;
}

}  // namespace

TrivalentTree TrivalentTree::leaf(int label) { return {1, make_leaf(label)}; }

TrivalentTree TrivalentTree::join(const TrivalentTree& a, const TrivalentTree& b) {
    return {a.n + b.n, make_join(a.root, b.root)};
}

TrivalentTree TrivalentTree::parse(const std::string& s) {
    size_t pos = 0;
    std::function<TrivalentTree()> node = [&]() -> TrivalentTree {
        if (pos >= s.size()) throw UsageError("truncated tree " + s);
        char c = s[pos++];
        if (c >= '1' && c <= '9') return leaf(c - '0');
        if (c != '(') throw UsageError("bad tree " + s);
        TrivalentTree a = node(), b = node();
        if (pos >= s.size() || s[pos++] != ')') throw UsageError("bad tree " + s);
        return join(a, b);
    };
    TrivalentTree t = node();
    if (pos != s.size()) throw UsageError("trailing input in tree " + s);
    return t;
}

std::string TrivalentTree::str() const {
    std::string out;
    print(root, n > 9, out);
    return out;
}

TrivalentTree TrivalentTree::canonical() const { return {n, canon(root)}; }

std::vector<int> TrivalentTree::leaf_order() const {
    std::vector<int> out;
    std::function<void(const TreeP&)> walk = [&](const TreeP& t) {
        if (t->leaf) {
            out.push_back(t->leaf);
            return;
        }
        walk(t->left);
        walk(t->right);
    };
    walk(root);
    return out;
}

std::vector<Mask> TrivalentTree::internal_lines() const {
    std::vector<Mask> out;
    std::function<void(const TreeP&, bool)> walk = [&](const TreeP& t, bool top) {
        if (t->leaf) return;
        if (!top) out.push_back(t->mask);
        walk(t->left, false);
        walk(t->right, false);
    };
    walk(root, true);
    return out;
}

std::vector<TrivalentTree> enumerate_trees(int n) {
    if (n < 1) throw UsageError("need n >= 1");
    std::vector<TreeP> cur{make_leaf(1)};
    for (int k = 2; k <= n; ++k) {
        std::vector<TreeP> next;
        for (const TreeP& t : cur)
            for (const TreeP& g : graft(t, k)) next.push_back(g);
        cur = std::move(next);
    }
    std::set<std::string> seen;
    std::vector<TrivalentTree> out;
    for (const TreeP& t : cur) {
        TrivalentTree c = TrivalentTree{n, t}.canonical();
        if (seen.insert(c.str()).second) out.push_back(c);
    }
    return out;
}

std::vector<TrivalentTree> planar_embeddings(const TrivalentTree& t) {
    std::vector<TrivalentTree> out;
    for (const TreeP& r : flips(t.root)) out.push_back({t.n, r});
    return out;
}

int node_sign(const TrivalentTree& P, const std::vector<int>& degrees) {
    int s = 1;
    // returns the degree of the value on the line above t
    std::function<int(const TreeP&)> walk = [&](const TreeP& t) -> int {
        if (t->leaf) return degrees[t->leaf - 1];
        int a = walk(t->left), b = walk(t->right);
        if (a % 2) s = -s;
        return a + b - 1;
    };
    walk(P.root);
    return s;
}

int koszul_sign(const TrivalentTree& P, const std::vector<int>& degrees) {
    if (static_cast<int>(degrees.size()) != P.n) throw UsageError("degree count differs from leaves");
    int s = node_sign(P, degrees);
    std::vector<int> order = P.leaf_order();
    for (size_t a = 0; a < order.size(); ++a)
        for (size_t b = a + 1; b < order.size(); ++b)
            if (order[a] > order[b] && degrees[order[a] - 1] % 2 == 0 &&
                degrees[order[b] - 1] % 2 == 0)
                s = -s;
    for (int j = P.n - 1; j >= 1; j -= 2)
        if (degrees[j - 1] % 2) s = -s;
    return s;
}

QVec eval_tree(const TrivalentTree& P, const DgLaSpec& g, const HomotopyAssignment& H,
               const std::vector<QVec>& inputs) {
    if (static_cast<int>(inputs.size()) != P.n) throw UsageError("input count differs from leaves");
    std::vector<QVec> lifted(inputs);
    if (!H.i.empty())
        for (int l = 0; l < P.n; ++l) lifted[l] = H.i[l].apply(inputs[l]);
    std::vector<int> degrees;
    for (const QVec& x : lifted) {
        int d = g.vec_degree(x);
        degrees.push_back(d < 0 ? 0 : d);
    }
    auto momentum = [&](Mask m) {
        Mom s;
        for (int l : labels(m)) s = s + H.k[l - 1];
        return s;
    };
    std::function<QVec(const TreeP&, bool)> walk = [&](const TreeP& t, bool top) -> QVec {
        if (t->leaf) return lifted[t->leaf - 1];
        QVec x = g.bracket(momentum(t->left->mask), momentum(t->right->mask), walk(t->left, false),
                           walk(t->right, false));
        if (top) return x;
        auto it = H.H.find(t->mask);
        if (it == H.H.end()) throw IncompleteAssignment("no homotopy for an internal line");
        return it->second.apply(x);
    };
    QVec out = scale(walk(P.root, true), QI(koszul_sign(P, degrees)));
    return H.p.rows() > 0 ? H.p.apply(out) : out;
}

}  // namespace mmb
