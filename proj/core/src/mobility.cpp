#include "betis/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "betis/parallel.hpp"

namespace betis {

NonUserContactModel NonUserContactModel::poisson(double lambda) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("poisson lambda must be >= 0");
    NonUserContactModel model;
    if (lambda == 0.0) {
        model.pmf = {1.0};
        return model;
    }
    double term = std::exp(-lambda);  // f(0)
    double cumulative = term;
    model.pmf.push_back(term);
    // extend until the tail mass drops below 1e-9
    for (int m = 1; cumulative < 1.0 - 1e-9; ++m) {
        term *= lambda / m;
        cumulative += term;
        model.pmf.push_back(term);
        if (m > 4096) throw std::runtime_error("poisson contact model failed to converge");
    }
    double sum = 0.0;
    for (double p : model.pmf) sum += p;
    for (double& p : model.pmf) p /= sum;
    return model;
}

std::vector<Location> init_locations(int n, std::uint64_t master_seed) {
    if (n < 1) throw std::invalid_argument("init_locations requires n >= 1");
    std::vector<Location> locs(n);
    for (int i = 0; i < n; ++i) {
        Rng rng = make_rng(master_seed, Stream::InitLocation, 0, i);
        locs[i].x = rng.uniform01();
        locs[i].y = rng.uniform01();
    }
    return locs;
}

std::vector<Location> move_step(const std::vector<Location>& locs, double p_move,
                                std::uint64_t master_seed, int k) {
    std::vector<Location> next(locs.size());
    for (std::size_t i = 0; i < locs.size(); ++i) {
        Rng rng = make_rng(master_seed, Stream::Movement, k, i);
        if (rng.bernoulli(p_move)) {
            next[i].x = rng.uniform01();
            next[i].y = rng.uniform01();
        } else {
            next[i] = locs[i];
        }
    }
    return next;
}

ContactSnapshot compute_contacts(const std::vector<Location>& locs, double d_inf,
                                 int n_users, int time, int threads) {
    if (!(d_inf > 0.0)) throw std::invalid_argument("d_inf must be > 0");
    const int n = static_cast<int>(locs.size());
    if (n_users > n) throw std::invalid_argument("n_users exceeds population size");

    // cell size >= d_inf so neighbors are confined to the 3x3 block
    const int cells = std::max(1, static_cast<int>(std::floor(1.0 / d_inf)));
    const double inv_cell = static_cast<double>(cells);
    auto cell_of = [&](double coord) {
        int c = static_cast<int>(coord * inv_cell);
        return std::clamp(c, 0, cells - 1);
    };

    std::vector<std::vector<std::int32_t>> buckets(
        static_cast<std::size_t>(cells) * cells);
    for (int i = 0; i < n; ++i)
        buckets[static_cast<std::size_t>(cell_of(locs[i].y)) * cells + cell_of(locs[i].x)]
            .push_back(i);

    ContactSnapshot snap;
    snap.time = time;
    snap.n_users = n_users;
    snap.full_neighbors.resize(n);
    snap.user_neighbors.resize(n_users);

    const double d2 = d_inf * d_inf;
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const int cx = cell_of(locs[i].x);
            const int cy = cell_of(locs[i].y);
            auto& out = snap.full_neighbors[i];
            for (int dy = -1; dy <= 1; ++dy) {
                const int y = cy + dy;
                if (y < 0 || y >= cells) continue;
                for (int dx = -1; dx <= 1; ++dx) {
                    const int x = cx + dx;
                    if (x < 0 || x >= cells) continue;
                    for (std::int32_t j : buckets[static_cast<std::size_t>(y) * cells + x]) {
                        if (j == static_cast<std::int32_t>(i)) continue;
                        const double ddx = locs[i].x - locs[j].x;
                        const double ddy = locs[i].y - locs[j].y;
                        if (ddx * ddx + ddy * ddy <= d2) out.push_back(j);
                    }
                }
            }
            std::sort(out.begin(), out.end());
            if (i < static_cast<std::size_t>(n_users)) {
                auto& uout = snap.user_neighbors[i];
                for (std::int32_t j : out)
                    if (j < n_users) uout.push_back(j);
            }
        }
    });
    return snap;
}

NonUserContactModel nonuser_contact_distribution(std::span<const ContactSnapshot> snapshots) {
    if (snapshots.empty())
        throw std::invalid_argument("nonuser_contact_distribution requires at least one snapshot");
    std::vector<std::uint64_t> histogram(1, 0);
    std::uint64_t total = 0;
    for (const ContactSnapshot& snap : snapshots) {
        if (snap.n_users < 1)
            throw std::invalid_argument("nonuser_contact_distribution requires n_users >= 1");
        for (int i = 0; i < snap.n_users; ++i) {
            const int m = snap.nonuser_contact_count(i);
            if (m >= static_cast<int>(histogram.size())) histogram.resize(m + 1, 0);
            ++histogram[m];
            ++total;
        }
    }
    NonUserContactModel model;
    model.pmf.resize(histogram.size());
    for (std::size_t m = 0; m < histogram.size(); ++m)
        model.pmf[m] = static_cast<double>(histogram[m]) / static_cast<double>(total);
    return model;
}

std::string contacts_to_csv(std::span<const ContactSnapshot> snapshots) {
    std::ostringstream out;
    out << "k,i,j\n";
    for (const ContactSnapshot& snap : snapshots)
        for (std::size_t i = 0; i < snap.size(); ++i)
            for (std::int32_t j : snap.full_neighbors[i])
                if (static_cast<std::int32_t>(i) < j)
                    out << snap.time << ',' << i << ',' << j << '\n';
    return out.str();
}

}  // namespace betis
