#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mmb/dgla.hpp"
#include "mmb/kinematics.hpp"

namespace mmb {

// Full binary tree with leaves labelled 1..n; children are ordered, so a
// value is a planar embedding and canonical() picks the representative
// of its tree.
struct TreeNode {
    int leaf = 0;  // label for leaves, 0 for internal nodes
    std::shared_ptr<const TreeNode> left, right;
    Mask mask = 0;  // leaves below
};
using TreeP = std::shared_ptr<const TreeNode>;

struct TrivalentTree {
    int n = 0;
    TreeP root;

    static TrivalentTree leaf(int label);
    static TrivalentTree join(const TrivalentTree& a, const TrivalentTree& b);
    static TrivalentTree parse(const std::string& s);  // "((12)3)", single-digit labels

    std::string str() const;
    // Children ordered by smallest leaf label at every node.
    TrivalentTree canonical() const;
    // Leaf labels read left to right.
    std::vector<int> leaf_order() const;
    // Leaf sets of the internal lines (non-root internal nodes).
    std::vector<Mask> internal_lines() const;
};

std::vector<TrivalentTree> enumerate_trees(int n);
std::vector<TrivalentTree> planar_embeddings(const TrivalentTree& t);

// Node signs (-1)^{|x|} of [[x,y]] = (-1)^{|x|}[x,y] with |x| the degree of
// the left input, the permutation sign with even degrees counted as odd,
// and (-1)^{x_{n-1}+x_{n-3}+...}.
int koszul_sign(const TrivalentTree& P, const std::vector<int>& degrees);
// Product of the node signs alone.
int node_sign(const TrivalentTree& P, const std::vector<int>& degrees);

struct HomotopyAssignment {
    std::vector<Mom> k;          // input momenta, leg l at k[l-1]
    std::vector<QMat> i;         // optional lifts, homology -> g at k
    QMat p;                      // optional output projection
    std::map<Mask, QMat> H;      // homotopy at k_J for each internal line J
};

// koszul_sign * p[H[...[x, y]...]] with the plain bracket at every node;
// inputs are homology coordinates when H.i is given, else elements of g.
QVec eval_tree(const TrivalentTree& P, const DgLaSpec& g, const HomotopyAssignment& H,
               const std::vector<QVec>& inputs);

}  // namespace mmb
