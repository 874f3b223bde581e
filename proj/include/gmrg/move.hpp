#pragma once

// Single-step graph moves shared by the incremental score computation and
// the sampler: add an isolated vertex, delete an isolated vertex, change
// one edge value.

#include "gmrg/graph.hpp"

namespace gmrg {

struct Move {
    enum class Kind { add_vertex, delete_vertex, set_edge };
    Kind kind;
    int v = -1;
    int u = -1;        // second endpoint for set_edge
    json attr;         // attribute for add_vertex
    int value = -1;    // new edge value index for set_edge

    static Move add(int v, json attr = {}) { return {Kind::add_vertex, v, -1, std::move(attr), -1}; }
    static Move del(int v) { return {Kind::delete_vertex, v, -1, {}, -1}; }
    static Move edge(int u, int v, int value) {
        if (u > v) std::swap(u, v);
        return {Kind::set_edge, v, u, {}, value};
    }
};

// Whether the move is admissible from g (vertex absent/present, isolation,
// max order, master maps, value differs from the current one).
bool move_valid(const SpaceSpec& s, const Graph& g, const Move& m);

// Applies a valid move; throws std::invalid_argument otherwise.
Graph apply_move(const SpaceSpec& s, const Graph& g, const Move& m);

}  // namespace gmrg
