// Temporary exploration probe; not part of the deliverable build.
#include <atomic>
#include <chrono>
#include <cstdio>
#include <thread>
#include <vector>

#include "locdom/detection.hpp"
#include "locdom/solver.hpp"

using namespace locdom;

static Graph graph_from_mask(int n, std::uint32_t mask) {
  std::vector<std::pair<int, int>> edges;
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit)
      if ((mask >> bit) & 1) edges.push_back({u, v});
  return Graph::from_edge_list(n, edges);
}

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 6;
  bool solver_too = argc > 2;
  std::uint64_t graphs = 1ull << (n * (n - 1) / 2);
  auto t0 = std::chrono::steady_clock::now();
  std::atomic<std::uint64_t> done{0};
  std::atomic<bool> mismatch{false};
  int workers = 2;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::uint64_t mask = w; mask < graphs; mask += workers) {
        Graph g = graph_from_mask(n, (std::uint32_t)mask);
        for (auto kind : {DetectionKind::Open, DetectionKind::Closed}) {
          for (int red = 0; red <= 1; ++red) {
            if (!solver_too) {
              for (std::uint32_t s = 0; s < (1u << n); ++s) {
                DetectorSet ds(g, kind);
                for (int v = 0; v < n; ++v)
                  if ((s >> v) & 1) ds.members.add(v);
                bool a = verify(ds, red).valid();
                bool b = verify_by_deletion(ds, red).valid();
                if (a != b) mismatch = true;
              }
            } else {
              SolveRequest req;
              req.graph = &g;
              req.kind = kind;
              req.redundancy = red;
              auto bf = brute_force_min(req);
              auto bb = branch_and_bound_min(req);
              if (bf.status != bb.status || bf.size != bb.size) mismatch = true;
            }
          }
        }
        ++done;
      }
    });
  }
  for (auto& t : pool) t.join();
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("n=%d graphs=%llu %s sweep: mismatch=%d (%.1fs)\n", n,
              (unsigned long long)graphs, solver_too ? "solver" : "verify", (int)mismatch, dt);
  return 0;
}
