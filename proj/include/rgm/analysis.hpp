#pragma once

#include "rgm/graph.hpp"

namespace rgm {

/// Component and degree measurements of one realization.
struct ComponentSummary {
  int component_count = 0;
  int largest_size = 0;
  int isolated_count = 0;
  long degree_sum = 0;
};

ComponentSummary analyze(const LabeledGraph& g);

double average_degree(const LabeledGraph& g);

/// True iff g has a connected component on at least beta * n vertices.
bool is_beta_connected(const LabeledGraph& g, double beta);

bool is_connected(const LabeledGraph& g);

}  // namespace rgm
