#pragma once

//
// ... Standard header files
//
#include <algorithm>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

//
// ... shqr header files
//
#include "shqr/iqr.hpp"
#include "shqr/params.hpp"
#include "shqr/ritz.hpp"
#include "shqr/shifting.hpp"

namespace shqr {

  template <class R>
  struct DeflatedBlock {
    std::size_t offset = 0;
    BasicHessenberg<R> h;
  };

  /// Zeroes every bottom-k subdiagonal with modulus <= omega and splits into diagonal blocks, top to bottom.
  template <class R>
  std::vector<DeflatedBlock<R>> deflate(const BasicHessenberg<R>& h, double omega, std::size_t k) {
    const std::size_t n = h.n();
    BasicHessenberg<R> z = h;
    std::vector<std::size_t> cuts;
    const std::size_t first = n > k ? n - k : 1;
    for (std::size_t i = first; i < n; ++i)
      if (!(to_double(z.subdiagonal(i)) > omega)) {
        z.at(i, i - 1) = Complex<R>();
        cuts.push_back(i);
      }
    for (std::size_t i = 1; i < first; ++i)
      if (z(i, i - 1) == Complex<R>()) cuts.push_back(i);
    std::sort(cuts.begin(), cuts.end());
    std::vector<DeflatedBlock<R>> out;
    std::size_t lo = 0;
    for (std::size_t c : cuts) {
      out.push_back({lo, z.block(lo, c)});
      lo = c;
    }
    out.push_back({lo, z.block(lo, n)});
    return out;
  }

  enum class TraceBranch { init, ritz_shift, exceptional, ritz_decouple };

  const char* to_string(TraceBranch b);

  struct IterationRecord {
    std::size_t iteration = 0;
    double psi = 0.0;  ///< potential after the iteration
    TraceBranch branch = TraceBranch::init;
    Cplx shift;        ///< shift applied (repeated k times), zero for init
    std::size_t retries = 0;
  };

  struct TreeNode {
    std::size_t id = 0;
    std::optional<std::size_t> parent;
    std::size_t offset = 0;
    std::size_t size = 0;
    bool leaf = false;
    std::vector<IterationRecord> trace;
    std::size_t retries = 0;
    std::size_t sh_steps = 0;
    std::size_t rod_calls = 0;
    double solver_error = 0.0;  ///< leaves: certified error bound of the small solver
    bool solver_certified = true;
  };

  struct DeflationTree {
    std::vector<TreeNode> nodes;  ///< sorted by (offset ascending, size descending); id = index
  };

  struct ShiftedQrResult {
    std::vector<Cplx> eigenvalues;        ///< grouped by leaf block, blocks by offset
    std::vector<std::size_t> eigen_block; ///< leaf node id of each eigenvalue
    DeflationTree tree;
    RunParams params;
    std::size_t sh_steps = 0;
    std::size_t rod_calls = 0;
    std::size_t uncertified_solves = 0;
  };

  struct ShiftedQrOptions {
    std::size_t threads = 1;
    std::size_t max_retries = 3;
  };

  /// Failure carrying the trace of the node that gave up.
  class RunFailure : public ProbabilisticFailure {
  public:
    RunFailure(const std::string& what, std::size_t offset, std::vector<IterationRecord> trace)
      : ProbabilisticFailure(what), offset_(offset), trace_(std::move(trace)) {}

    std::size_t offset() const { return offset_; }
    const std::vector<IterationRecord>& trace() const { return trace_; }

  private:
    std::size_t offset_;
    std::vector<IterationRecord> trace_;
  };

  namespace detail {

    template <class R>
    struct BlockTask {
      BasicHessenberg<R> h;
      std::size_t offset = 0;
      long parent_slot = -1;
      std::uint64_t seed = 0;
      bool top = false;
    };

    struct NodeSlot {
      TreeNode node;
      long parent_slot = -1;
      std::vector<Cplx> eigs;
    };

    template <class R>
    std::vector<Cplx> to_cplx_list(const std::vector<CplxDD>& v) {
      std::vector<Cplx> out;
      out.reserve(v.size());
      for (const auto& z : v) out.push_back(to_cplx(z));
      return out;
    }

    inline std::string describe_trace(std::size_t offset, std::size_t size, const std::vector<IterationRecord>& t) {
      std::ostringstream os;
      os << "block at offset " << offset << " (size " << size << ") psi trace:";
      for (const auto& r : t) os << ' ' << r.psi;
      return os.str();
    }

    template <class R>
    void run_block(BlockTask<R> task, const RunParams& rp, const GlobalData& g, const SmallEigSolver& solver,
                   const ShiftedQrOptions& opt, NodeSlot& slot, std::vector<BlockTask<R>>& children) {
      const std::size_t n = task.h.n();
      const std::size_t k = g.k;
      slot.node.offset = task.offset;
      slot.node.size = n;

      if (n <= k) {
        const double n0 = static_cast<double>(g.n0);
        const double beta = task.top ? rp.delta : rp.delta / n0;
        const double phi = task.top ? rp.phi : rp.phi / (3.0 * n0);
        SmallEigResult res = solver.solve(task.h.dense().template cast<DoubleDouble>(), beta, phi);
        if (res.values.size() != n) throw DimensionError("small solver returned wrong eigenvalue count");
        slot.node.leaf = true;
        slot.node.solver_error = res.error_bound;
        slot.node.solver_certified = res.certified;
        slot.eigs = to_cplx_list<R>(res.values);
        return;
      }

      Rng rng(task.seed);
      BasicHessenberg<R> h = std::move(task.h);
      auto& trace = slot.node.trace;
      trace.push_back({0, to_double(potential(h, k)), TraceBranch::init, Cplx(), 0});
      std::size_t iter = 0;
      while (to_double(h.min_bottom_subdiagonal(k)) > rp.omega) {
        if (iter >= rp.n_dec)
          throw RunFailure("iteration budget exceeded; " + describe_trace(task.offset, n, trace), task.offset, trace);
        ++iter;
        std::size_t retries = 0;
        RitzOutcome<R> rod;
        for (;;) {
          rod = ritz_or_decouple(h, rp.omega, rp.phi_working, g, solver, rng);
          ++slot.node.rod_calls;
          if (rod.status != RitzStatus::dichotomy_miss) break;
          if (++retries > opt.max_retries)
            throw RunFailure("Ritz dichotomy failed after retries; " + describe_trace(task.offset, n, trace),
                             task.offset, trace);
        }
        if (rod.dec) {
          h = std::move(rod.next_h);
          trace.push_back({iter, to_double(potential(h, k)), TraceBranch::ritz_decouple, to_cplx(*rod.culprit),
                           retries});
          slot.node.retries += retries;
          continue;
        }
        ShStepOutcome<R> sh;
        for (;;) {
          sh = sh_step(h, rod.ritz_values, rp.omega, g, rng);
          ++slot.node.sh_steps;
          if (sh.success) break;
          if (++retries > opt.max_retries)
            throw RunFailure("no exceptional shift qualified after retries; " +
                               describe_trace(task.offset, n, trace),
                             task.offset, trace);
        }
        h = std::move(sh.next_h);
        trace.push_back({iter, sh.psi_after,
                         sh.branch == ShBranch::ritz_shift ? TraceBranch::ritz_shift : TraceBranch::exceptional,
                         to_cplx(sh.shift_used[0]), retries});
        slot.node.retries += retries;
      }

      std::vector<DeflatedBlock<R>> blocks = deflate(h, rp.omega, k);
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        BlockTask<R> child;
        child.h = std::move(blocks[i].h);
        child.offset = task.offset + blocks[i].offset;
        child.seed = splitmix64(task.seed + i + 1);
        children.push_back(std::move(child));
      }
    }

  } // namespace detail

  /// Eigenvalues of some H' with ||H' - H|| <= delta, with probability >= 1 - phi.
  ///
  /// Blocks produced by deflation are independent and may run on several threads; each block
  /// draws from its own stream derived from seed, so results do not depend on the thread count.
  template <class R>
  ShiftedQrResult shifted_qr(const BasicHessenberg<R>& h, double delta, double phi, const GlobalData& g,
                             const SmallEigSolver& solver, std::uint64_t seed, const ShiftedQrOptions& opt = {}) {
    if (h.n() == 0) throw DimensionError("shifted_qr: empty matrix");
    ShiftedQrResult result;
    result.params = derive_run_params(g.n0, delta, phi, g, seed);
    const RunParams& rp = result.params;

    std::mutex mu;
    std::condition_variable cv;
    std::deque<detail::BlockTask<R>> queue;
    std::deque<detail::NodeSlot> slots;
    std::vector<std::pair<std::size_t, std::exception_ptr>> errors;
    std::size_t active = 0;

    detail::BlockTask<R> root;
    root.h = h;
    root.seed = seed;
    root.top = true;
    queue.push_back(std::move(root));

    auto worker = [&]() {
      for (;;) {
        detail::BlockTask<R> task;
        detail::NodeSlot* slot = nullptr;
        long slot_index = 0;
        {
          std::unique_lock<std::mutex> lock(mu);
          cv.wait(lock, [&] { return !queue.empty() || active == 0; });
          if (queue.empty()) return;
          task = std::move(queue.front());
          queue.pop_front();
          ++active;
          slots.emplace_back();
          slot_index = static_cast<long>(slots.size() - 1);
          slot = &slots.back();
          slot->parent_slot = task.parent_slot;
        }
        std::vector<detail::BlockTask<R>> children;
        const std::size_t offset = task.offset;
        std::exception_ptr err;
        try {
          detail::run_block(std::move(task), rp, g, solver, opt, *slot, children);
        } catch (...) {
          err = std::current_exception();
        }
        {
          std::lock_guard<std::mutex> lock(mu);
          if (err) errors.emplace_back(offset, err);
          for (auto& c : children) {
            c.parent_slot = slot_index;
            queue.push_back(std::move(c));
          }
          --active;
        }
        cv.notify_all();
      }
    };

    const std::size_t nthreads = std::max<std::size_t>(1, opt.threads);
    if (nthreads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }

    if (!errors.empty()) {
      auto first = std::min_element(errors.begin(), errors.end(),
                                    [](const auto& a, const auto& b) { return a.first < b.first; });
      std::rethrow_exception(first->second);
    }

    // Canonical node order: offset ascending, larger (ancestor) blocks first.
    std::vector<std::size_t> order(slots.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const TreeNode& x = slots[a].node;
      const TreeNode& y = slots[b].node;
      if (x.offset != y.offset) return x.offset < y.offset;
      return x.size > y.size;
    });
    std::vector<std::size_t> id_of(slots.size());
    for (std::size_t i = 0; i < order.size(); ++i) id_of[order[i]] = i;
    for (std::size_t i = 0; i < order.size(); ++i) {
      detail::NodeSlot& s = slots[order[i]];
      TreeNode node = s.node;
      node.id = i;
      if (s.parent_slot >= 0) node.parent = id_of[static_cast<std::size_t>(s.parent_slot)];
      result.sh_steps += node.sh_steps;
      result.rod_calls += node.rod_calls;
      if (node.leaf) {
        if (!node.solver_certified) ++result.uncertified_solves;
        for (const Cplx& z : s.eigs) {
          result.eigenvalues.push_back(z);
          result.eigen_block.push_back(i);
        }
      }
      result.tree.nodes.push_back(std::move(node));
    }
    return result;
  }

  /// Preprocessing output for an arbitrary square matrix.
  struct PreprocessResult {
    HessenbergMatrix h;
    double norm_estimate = 0.0;      ///< spectral norm estimate of the input
    double perturbation_norm = 0.0;  ///< spectral norm of the added Gaussian matrix
  };

  /// Adds a complex Gaussian matrix of spectral norm delta * ||A|| / 2 (skipped when delta = 0)
  /// and reduces the result to Hessenberg form.
  PreprocessResult preprocess(const DenseMatrix<double>& a, double delta, Rng& rng);

  /// Largest singular value by power iteration on A^* A from a fixed start vector.
  double spectral_norm_estimate(const DenseMatrix<double>& a, int iterations = 60);

  struct SolveConfig {
    double delta = 1e-6;  ///< relative accuracy
    double phi = 0.01;
    std::uint64_t seed = 0;
    int bits = 53;
    std::optional<double> B;
    std::optional<double> Gamma;
    std::optional<double> Sigma;
    bool preprocess = true;
    std::size_t threads = 1;
    const SmallEigSolver* solver = nullptr;  ///< defaults to AberthSolver
  };

  struct SolveReport {
    std::vector<Cplx> eigenvalues;
    std::vector<std::size_t> eigen_block;
    std::vector<std::size_t> eigen_offset;
    DeflationTree tree;
    GlobalData globals;
    RunParams params;
    PrecisionBudget budget;
    int bits_used = 53;
    double delta_absolute = 0.0;
    std::vector<std::string> warnings;
    std::size_t sh_steps = 0;
    std::size_t rod_calls = 0;
    std::size_t uncertified_solves = 0;
  };

  /// Globals from the config; auto mode uses B = n / d and Gamma = ||A|| (d / n)^2 with d = delta / 2.
  GlobalData globals_for(const SolveConfig& cfg, std::size_t n, double norm_a, double frobenius_h);

  /// Library entry point: optional preprocessing, then shifted QR at the configured precision.
  SolveReport solve(const DenseMatrix<double>& a, const SolveConfig& cfg);

} // namespace shqr
