#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reosem/automata.hpp"
#include "reosem/coloring.hpp"
#include "reosem/constraints.hpp"

namespace reosem {

// The channel and node kinds a circuit is built from. Sync, LossySync and
// Fifo are the standard models; SyncDrain, Merger and Replicator are
// extensions with the usual semantics (see README).
enum class PrimitiveKind { Sync, LossySync, Fifo, SyncDrain, Merger, Replicator };

int primitive_arity(PrimitiveKind kind);

// Lowercase names as used by the circuit DSL ("sync", "lossysync", ...).
std::string_view primitive_name(PrimitiveKind kind);
std::optional<PrimitiveKind> primitive_kind_from_name(std::string_view name);

// Both behavioral models of one primitive. The automaton is derived from
// the coloring model, so the two are bisimilar by construction.
struct PrimitiveModels {
  EpsilonConnector eps;
  AlphaConnector alpha;
};

// Builds a primitive over the given nodes (pairwise distinct, count equal
// to the kind's arity) with every index stamped with the instance id
// (nonempty). Fifo gets one full state per universe item; with a singleton
// universe the full state keeps its plain name.
PrimitiveModels instantiate(PrimitiveKind kind, const std::vector<Node>& nodes,
                            const std::string& instance, const DataUniverse& u);

// Applies an injective node mapping covering the model's nodes to every
// occurrence: structure, colorings, firing sets and constraint atoms.
EpsilonConnector rename_nodes(const EpsilonConnector& e,
                              const std::map<Node, Node>& mapping);
AlphaConnector rename_nodes(const AlphaConnector& a,
                            const std::map<Node, Node>& mapping);

}  // namespace reosem
