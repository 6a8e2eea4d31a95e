#pragma once
// Agent locations on the unit square and proximity-derived contact sets.

#include <cstdint>
#include <span>
#include <vector>

#include "betis/contact_model.hpp"
#include "betis/rng.hpp"

namespace betis {

struct Location {
    double x = 0.0;
    double y = 0.0;
};

// Per-step adjacency. full_neighbors[i] holds every j != i within d_inf of i
// (plain Euclidean distance, inclusive threshold, no wraparound);
// user_neighbors[i] is its restriction to user indices and exists only for
// i < n_users. Neighbor lists are sorted ascending.
struct ContactSnapshot {
    int time = 0;
    int n_users = 0;
    std::vector<std::vector<std::int32_t>> full_neighbors;
    std::vector<std::vector<std::int32_t>> user_neighbors;

    std::size_t size() const { return full_neighbors.size(); }

    // |N_i| - |N_u,i| for a user i.
    int nonuser_contact_count(int i) const {
        return static_cast<int>(full_neighbors[i].size() - user_neighbors[i].size());
    }
};

// n i.i.d. uniform locations on [0,1]^2. Coordinates for individual i come
// from stream (InitLocation, 0, i). Rejects n = 0.
std::vector<Location> init_locations(int n, std::uint64_t master_seed);

// Each agent independently relocates to a fresh uniform point with
// probability p_move, else stays. k tags the step's random stream.
std::vector<Location> move_step(const std::vector<Location>& locs, double p_move,
                                std::uint64_t master_seed, int k);

// Exact fixed-radius neighbor search via a uniform grid with cell size
// >= d_inf, so only the 3x3 cell block around an agent needs scanning.
// Output is identical to the all-pairs computation.
ContactSnapshot compute_contacts(const std::vector<Location>& locs, double d_inf,
                                 int n_users, int time, int threads = 1);

// Empirical pmf of the per-user count of non-user contacts, pooled over all
// users and all snapshots, truncated at the largest observed count.
// Rejects an empty snapshot sequence and snapshots without users.
NonUserContactModel nonuser_contact_distribution(std::span<const ContactSnapshot> snapshots);

// Debug dump of all contact pairs (k, i, j) with i < j, one CSV row each.
std::string contacts_to_csv(std::span<const ContactSnapshot> snapshots);

}  // namespace betis
