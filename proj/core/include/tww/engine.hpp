#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "tww/binary_structure.hpp"
#include "tww/caps.hpp"
#include "tww/formula.hpp"
#include "tww/morphism.hpp"
#include "tww/trigraph.hpp"

namespace tww {

// Radii governing which parts refresh their reduct after a merge and which
// parts feed the fused shuffle. Wide uses the safe bounds 3^l (refresh) and
// 2*3^l (inputs). Tight shrinks them to R1 = R + 3^(l-2) and R with
// R = (3^(l-1)-1)/2: a connected tuple rooted at X never leaves the R-ball
// around X, and a merge at distance > R1 can change neither that ball's
// parts nor any pairwise distance a sequence graph inside it compares.
enum class DpRadii { Wide, Tight };

struct DpStepStats {
    Vertex merged = 0;
    int parts_refreshed = 0;       // size of the refresh set
    long long shuffle_nodes = 0;   // kept nodes across this step's shuffles
    long long largest_reduct = 0;  // node count of the largest refreshed reduct
};

// Partition of {1..n} with quotient bookkeeping and one reduct per part.
// Merged parts take the step's fresh id. rows[p][q] packs, per relation,
// any/all arc bits in both orientations (any p->q, all p->q, any q->p,
// all q->p); a part pair is red iff some relation is mixed across it. The
// structure must outlive the state.
class DPState {
  public:
    const BinaryStructure* s = nullptr;
    int l = 0;
    DpRadii radii = DpRadii::Wide;
    Caps caps;

    std::vector<int> parent;  // union-find over ids; parent[p] == p iff p is live
    std::map<int, std::map<int, std::vector<std::uint8_t>>> rows;
    std::map<int, std::set<int>> red;  // red part graph, symmetric
    std::map<int, MorphismTree> reducts;
    std::vector<DpStepStats> stats;

    int part_of(Vertex v);  // live part containing v; compresses paths
    bool mixed(int p, int q) const;
};

DPState dp_init(const BinaryStructure& s, int l, const Caps& caps = {},
                DpRadii radii = DpRadii::Wide);

// Merges step.u and step.v into the fresh id step.w and refreshes every
// reduct within the radius: fused shuffle of the in-radius parts, pruning
// entries against the pre-merge partition and rooting the result against
// the post-merge one, then reduction. Audits that every input tree is still
// made of connected tuples rooted at its part and throws logic_error
// otherwise. CapError when a tree outgrows caps.reduct_nodes.
void dp_step(DPState& st, const ContractionStep& step);

// Runs the dynamic program over a full contraction sequence once per
// quantifier depth and answers sentences from the final reduct; repeated
// queries at the same depth reuse it.
class ModelChecker {
  public:
    // The sequence must relabel vertices 1..n and merge step k to id n+k.
    ModelChecker(BinaryStructure s, ContractionSequence seq, Caps caps = {},
                 DpRadii radii = DpRadii::Wide);

    bool check(const PrenexFormula& f);                  // sentences only
    const MorphismTree& reduct(int l);                   // final reduct at depth l
    const std::vector<DpStepStats>& stats(int l) const;  // filled by a depth-l query

  private:
    BinaryStructure s_;
    ContractionSequence seq_;
    Caps caps_;
    DpRadii radii_;
    std::map<int, std::pair<MorphismTree, std::vector<DpStepStats>>> cache_;
};

bool model_check(const BinaryStructure& s, const ContractionSequence& seq, const PrenexFormula& f,
                 const Caps& caps = {}, DpRadii radii = DpRadii::Wide);

// Graph on 1..n with an edge u-v iff f(u,v) and f(v,u) both hold, where f
// has exactly two free variables; loops are dropped. The sequence only
// rides along so callers can pass one (structure, sequence) bundle.
Trigraph interpret(const BinaryStructure& s, const ContractionSequence& seq,
                   const PrenexFormula& f, const Caps& caps = {});

}  // namespace tww
