#include "seqpi/oracle.hpp"

#include <algorithm>

namespace seqpi::oracle {

// ---------------------------------------------------------------------------
// free sets

namespace {

void merge_sorted(std::vector<std::string>& out, const std::vector<std::string>& in) {
  size_t old = out.size();
  for (const auto& s : in)
    if (!std::binary_search(out.begin(), out.begin() + static_cast<long>(old), s))
      out.push_back(s);
  std::sort(out.begin(), out.end());
}

void add_name(std::vector<std::string>& out, const std::string& s) {
  if (!std::binary_search(out.begin(), out.end(), s)) {
    out.push_back(s);
    std::sort(out.begin(), out.end());
  }
}

void remove_name(std::vector<std::string>& out, const std::string& s) {
  auto it = std::find(out.begin(), out.end(), s);
  if (it != out.end()) out.erase(it);
}

bool has_name(const std::vector<std::string>& v, const std::string& s) {
  return std::binary_search(v.begin(), v.end(), s);
}

}  // namespace

XRedexOracle::FreeSets XRedexOracle::compute(const XPtr& p) const {
  auto it = cache_.find(p.get());
  if (it != cache_.end()) return it->second.sets;
  FreeSets fs;
  switch (p->kind) {
    case XKind::Capsule:
      fs.socks.push_back(p->s1);
      fs.plugs.push_back(p->p1);
      break;
    case XKind::Export: {
      fs = compute(p->left);
      remove_name(fs.socks, p->s1);
      remove_name(fs.plugs, p->p1);
      add_name(fs.plugs, p->p2);
      break;
    }
    case XKind::Import: {
      fs = compute(p->left);
      remove_name(fs.plugs, p->p1);
      FreeSets rr = compute(p->right);
      remove_name(rr.socks, p->s2);
      merge_sorted(fs.socks, rr.socks);
      merge_sorted(fs.plugs, rr.plugs);
      add_name(fs.socks, p->s1);
      break;
    }
    case XKind::Cut:
    case XKind::CutL:
    case XKind::CutR: {
      fs = compute(p->left);
      remove_name(fs.plugs, p->p1);
      FreeSets rr = compute(p->right);
      remove_name(rr.socks, p->s1);
      merge_sorted(fs.socks, rr.socks);
      merge_sorted(fs.plugs, rr.plugs);
      break;
    }
  }
  return fs;
}

void XRedexOracle::pin_subtree(const XPtr& p) {
  if (cache_.count(p.get())) return;
  if (p->left) pin_subtree(p->left);
  if (p->right) pin_subtree(p->right);
  cache_.emplace(p.get(), Pinned{p, compute(p)});
}

bool XRedexOracle::free_sock(const XPtr& p, const std::string& x) {
  auto it = cache_.find(p.get());
  if (it != cache_.end()) return has_name(it->second.sets.socks, x);
  return has_name(compute(p).socks, x);
}

bool XRedexOracle::free_plug(const XPtr& p, const std::string& a) {
  auto it = cache_.find(p.get());
  if (it != cache_.end()) return has_name(it->second.sets.plugs, a);
  return has_name(compute(p).plugs, a);
}

// "P introduces x": P is a capsule <x.b>, or an import with middle socket x
// and x not free elsewhere in it.
bool XRedexOracle::intro_sock(const XPtr& p, const std::string& x) {
  if (p->kind == XKind::Capsule) return p->s1 == x;
  if (p->kind != XKind::Import) return false;
  if (p->s1 != x) return false;
  if (free_sock(p->left, x)) return false;
  if (p->s2 != x && free_sock(p->right, x)) return false;
  return true;
}

bool XRedexOracle::intro_plug(const XPtr& p, const std::string& a) {
  if (p->kind == XKind::Capsule) return p->p1 == a;
  if (p->kind != XKind::Export) return false;
  if (p->p2 != a) return false;
  if (p->p1 != a && free_plug(p->left, a)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// per-rule matchers

void XRedexOracle::walk(const XPtr& p, std::vector<int>& path,
                        std::array<std::vector<Redex>, 3>& out) {
  auto emit = [&](XRule rule) {
    for (auto& o : out) o.push_back({path, rule});
  };
  auto emit_for = [&](bool full, bool cbn, bool cbv, XRule rule) {
    if (full) out[0].push_back({path, rule});
    if (cbn) out[1].push_back({path, rule});
    if (cbv) out[2].push_back({path, rule});
  };

  switch (p->kind) {
    case XKind::Capsule:
      return;
    case XKind::Export:
      path.push_back(0);
      walk(p->left, path, out);
      path.pop_back();
      return;
    case XKind::Import:
      path.push_back(0);
      walk(p->left, path, out);
      path.pop_back();
      path.push_back(1);
      walk(p->right, path, out);
      path.pop_back();
      return;
    case XKind::Cut: {
      bool li = intro_plug(p->left, p->p1);
      bool ri = intro_sock(p->right, p->s1);
      if (li && ri) {
        bool le = p->left->kind == XKind::Export;
        bool rimp = p->right->kind == XKind::Import;
        if (!le && !rimp) emit(XRule::Ax);
        if (le && !rimp) emit(XRule::ExpRen);
        if (!le && rimp) emit(XRule::ImpRen);
        if (le && rimp) {
          emit_for(true, false, true, XRule::ExpImpLeft);
          emit_for(true, true, false, XRule::ExpImpRight);
        }
      }
      if (!li) emit_for(true, ri, true, XRule::ActL);
      if (!ri) emit_for(true, true, li, XRule::ActR);
      break;
    }
    case XKind::CutL: {
      switch (p->left->kind) {
        case XKind::Capsule:
          emit(p->left->p1 == p->p1 ? XRule::PropDL : XRule::PropCapL);
          break;
        case XKind::Export:
          emit(p->left->p2 == p->p1 ? XRule::PropExpOutsL : XRule::PropExpInsL);
          break;
        case XKind::Import:
          emit(XRule::PropImpL);
          break;
        case XKind::Cut:
          emit(XRule::PropCutL);
          break;
        case XKind::CutL:
        case XKind::CutR:
          break;
      }
      break;
    }
    case XKind::CutR: {
      switch (p->right->kind) {
        case XKind::Capsule:
          emit(p->right->s1 == p->s1 ? XRule::PropDR : XRule::PropCapR);
          break;
        case XKind::Export:
          emit(XRule::PropExpR);
          break;
        case XKind::Import:
          emit(p->right->s1 == p->s1 ? XRule::PropImpOutsR : XRule::PropImpInsR);
          break;
        case XKind::Cut:
          emit(XRule::PropCutR);
          break;
        case XKind::CutL:
        case XKind::CutR:
          break;
      }
      break;
    }
  }

  // All cut kinds recurse into both branches.
  path.push_back(0);
  walk(p->left, path, out);
  path.pop_back();
  path.push_back(1);
  walk(p->right, path, out);
  path.pop_back();
}

std::array<std::vector<Redex>, 3> XRedexOracle::find_all(const XPtr& p) {
  std::array<std::vector<Redex>, 3> out;
  std::vector<int> path;
  walk(p, path, out);
  for (auto& o : out)
    std::stable_sort(o.begin(), o.end(),
                     [](const Redex& a, const Redex& b) { return a.path < b.path; });
  return out;
}

std::vector<Redex> XRedexOracle::find(const XPtr& p, Strategy strategy) {
  return std::move(find_all(p)[static_cast<std::size_t>(strategy)]);
}

// ---------------------------------------------------------------------------
// exhaustive enumeration

namespace {

const char* kSocks[2] = {"x", "y"};
const char* kPlugs[2] = {"a", "b"};

}  // namespace

void enumerate_x(int max_size, const std::function<void(const XPtr&)>& fn,
                 const std::function<void(const XPtr&)>& pinned) {
  // pools[n-1] holds every net of size n for the pooled sizes.
  const int pooled = std::min(max_size, 5);
  std::vector<std::vector<XPtr>> pools;

  auto emit_binaries = [&](int total, const std::function<void(const XPtr&)>& sink) {
    // All imports and cuts whose child sizes sum to total-1.
    for (int ls = 1; ls <= total - 2; ls++) {
      int rs = total - 1 - ls;
      if (ls > pooled || rs > pooled) continue;
      for (const XPtr& l : pools[static_cast<size_t>(ls) - 1])
        for (const XPtr& r : pools[static_cast<size_t>(rs) - 1])
          for (const char* a : kPlugs)
            for (const char* s : kSocks) {
              for (const char* mid : kSocks) sink(import_net(l, a, mid, s, r));
              sink(cut_net(XKind::Cut, l, a, s, r));
              sink(cut_net(XKind::CutL, l, a, s, r));
              sink(cut_net(XKind::CutR, l, a, s, r));
            }
    }
  };

  auto emit_exports_over = [&](const XPtr& body, const std::function<void(const XPtr&)>& sink) {
    for (const char* s : kSocks)
      for (const char* bp : kPlugs)
        for (const char* op : kPlugs) sink(export_net(s, body, bp, op));
  };

  // Sizes 1..pooled: build, pin, report, keep.
  for (int n = 1; n <= pooled; n++) {
    std::vector<XPtr> pool;
    auto keep = [&](const XPtr& p) {
      if (pinned) pinned(p);
      fn(p);
      pool.push_back(p);
    };
    if (n == 1) {
      for (const char* s : kSocks)
        for (const char* a : kPlugs) keep(capsule(s, a));
    } else {
      for (const XPtr& body : pools[static_cast<size_t>(n) - 2]) emit_exports_over(body, keep);
      emit_binaries(n, keep);
    }
    pools.push_back(std::move(pool));
  }

  // Size 6 streams; each size-6 net additionally spawns its size-7 exports.
  if (max_size >= 6) {
    auto visit6 = [&](const XPtr& p) {
      fn(p);
      if (max_size >= 7) emit_exports_over(p, fn);
    };
    for (const XPtr& body : pools[4]) emit_exports_over(body, visit6);
    emit_binaries(6, visit6);
  }

  // Size 7 imports and cuts come straight off pool pairs.
  if (max_size >= 7) emit_binaries(7, fn);
}

std::uint64_t count_x(int max_size) {
  // C(1) = 4; C(n) = 8 C(n-1) + 20 sum C(i) C(n-1-i).
  std::vector<std::uint64_t> c(static_cast<size_t>(max_size) + 1, 0);
  std::uint64_t total = 0;
  for (int n = 1; n <= max_size; n++) {
    std::uint64_t v = n == 1 ? 4 : 8 * c[static_cast<size_t>(n) - 1];
    for (int i = 1; i <= n - 2; i++)
      v += 20 * c[static_cast<size_t>(i)] *
           c[static_cast<size_t>(n - 1 - i)];
    c[static_cast<size_t>(n)] = v;
    total += v;
  }
  return total;
}

}  // namespace seqpi::oracle
