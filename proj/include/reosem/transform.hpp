#pragma once

#include "reosem/automata.hpp"
#include "reosem/coloring.hpp"

namespace reosem {

// Reads a coloring model as an automaton: states are the indexes, and each
// next entry (i, <c, g>) -> i' becomes the transition (i, flowset(c), g, i').
// The structure is untouched. Throws ValidationError on an invalid input.
AlphaConnector l_transform(const EpsilonConnector& e);

// Reads an automaton as a coloring model: each transition (q, F, g, q')
// becomes the next entry (q, <coloring of F over the node set, g>) -> q',
// and the tables collect the left-hand colorings state by state. States are
// kept as the index set. Throws ValidationError on an invalid input and
// NondeterminismError when two transitions would collide on one next key.
EpsilonConnector inv_l_transform(const AlphaConnector& a);

}  // namespace reosem
