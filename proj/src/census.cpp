#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "momtech/census.hpp"
#include "momtech/error.hpp"

namespace momtech {

namespace {

// Depth-first perfect matchings, always pairing the lowest free face. A
// partial matching is abandoned as soon as some symmetry image is
// lexicographically smaller on the already decided prefix; leaves surviving
// the full comparison are the lex-minimal orbit representatives.
class OrderlySearch {
 public:
  explicit OrderlySearch(const Inventory& inv) : group_(inventory_symmetries(inv)) {
    faces_ = static_cast<int>(group_.front().size());
    group_.erase(group_.begin());  // identity
    for (const auto& s : group_) {
      std::vector<int> inv_s(s.size());
      for (std::size_t f = 0; f < s.size(); ++f) inv_s[s[f]] = static_cast<int>(f);
      inverse_.push_back(std::move(inv_s));
    }
    order_ = static_cast<std::int64_t>(group_.size()) + 1;
  }

  int branches() const { return faces_ - 1; }

  template <class Emit>
  void run_branch(int branch, Emit&& emit) {
    partner_.assign(static_cast<std::size_t>(faces_), -1);
    const int g = branch + 1;
    partner_[0] = g;
    partner_[g] = 0;
    if (prefix_minimal()) dfs(emit);
  }

 private:
  // -1: image smaller, +1: image larger, 0: equal or undecided.
  int compare(std::size_t k) const {
    const auto& s = group_[k];
    const auto& si = inverse_[k];
    for (int f = 0; f < faces_; ++f) {
      const int cur = partner_[f];
      if (cur < 0) return 0;
      const int pre = partner_[si[f]];
      if (pre < 0) return 0;
      const int img = s[pre];
      if (img != cur) return img < cur ? -1 : 1;
    }
    return 0;
  }

  bool prefix_minimal() const {
    for (std::size_t k = 0; k < group_.size(); ++k)
      if (compare(k) < 0) return false;
    return true;
  }

  template <class Emit>
  void dfs(Emit& emit) {
    int f = 0;
    while (f < faces_ && partner_[f] >= 0) ++f;
    if (f == faces_) {
      std::int64_t stabilizer = 1;
      for (std::size_t k = 0; k < group_.size(); ++k) {
        int c = compare(k);
        if (c < 0) return;
        if (c == 0) ++stabilizer;
      }
      emit(partner_, order_ / stabilizer);
      return;
    }
    for (int g = f + 1; g < faces_; ++g) {
      if (partner_[g] >= 0) continue;
      partner_[f] = g;
      partner_[g] = f;
      if (prefix_minimal()) dfs(emit);
      partner_[f] = -1;
      partner_[g] = -1;
    }
  }

  std::vector<std::vector<int>> group_, inverse_;
  std::vector<int> partner_;
  int faces_ = 0;
  std::int64_t order_ = 1;
};

std::string encode(const Inventory& inv, const std::vector<int>& partner) {
  std::string out = to_string(inv) + ":";
  for (std::size_t f = 0; f < partner.size(); ++f) out += (f ? "." : "") + std::to_string(partner[f]);
  return out;
}

CensusRecord make_record(const Inventory& inv, const std::vector<int>& partner, std::int64_t orbit,
                         const VertexLinkReport& links) {
  CensusRecord r;
  r.signature = encode(inv, partner);
  r.inventory = to_string(inv);
  r.partner = partner;
  r.orbit_size = orbit;
  r.links = links;
  r.h1 = homology(GluingDescription::standard(inv, partner));
  return r;
}

struct BranchResult {
  CensusStats stats;
  std::vector<CensusRecord> records;
};

BranchResult run_branch(const Inventory& inv, OrderlySearch& search, int branch) {
  BranchResult out;
  search.run_branch(branch, [&](const std::vector<int>& partner, std::int64_t orbit) {
    ++out.stats.orbits;
    out.stats.matchings += orbit;
    auto g = GluingDescription::standard(inv, partner);
    auto links = vertex_links(g);
    if (!links.retained()) return;
    ++out.stats.retained_orbits;
    out.stats.retained_matchings += orbit;
    out.records.push_back(make_record(inv, partner, orbit, links));
  });
  return out;
}

int worker_count(const CensusOptions& options) {
  if (options.workers > 0) return options.workers;
  if (const char* env = std::getenv("MOMTECH_WORKERS")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1 || n > 1024)
      fail(ErrorKind::Precondition, std::string("MOMTECH_WORKERS must be a positive integer, got '") + env + "'");
    return static_cast<int>(n);
  }
  return 1;
}

constexpr const char* kCheckpointHeader = "momtech-census-checkpoint 1";

using BranchKey = std::pair<std::string, int>;

std::map<BranchKey, BranchResult> load_checkpoint(const std::string& path, const std::vector<Inventory>& inventories) {
  std::map<BranchKey, BranchResult> done;
  std::ifstream in(path);
  if (!in) return done;
  std::string line;
  if (!std::getline(in, line)) return done;
  if (line != kCheckpointHeader) fail(ErrorKind::Parse, path + ":1: not a census checkpoint");
  std::map<std::string, Inventory> by_name;
  for (const auto& inv : inventories) by_name[to_string(inv)] = inv;

  int lineno = 1;
  BranchKey key;
  BranchResult current;
  std::int64_t expected = -1;
  bool open = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    auto bad = [&](const std::string& what) { fail(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": " + what); };
    if (tag == "BRANCH") {
      current = {};
      ss >> key.first >> key.second >> current.stats.matchings >> current.stats.retained_matchings >>
          current.stats.orbits >> current.stats.retained_orbits >> expected;
      if (!ss || !by_name.count(key.first)) bad("malformed BRANCH line");
      open = true;
    } else if (tag == "R") {
      if (!open) bad("record outside a branch");
      std::int64_t orbit;
      std::string enc;
      ss >> orbit >> enc;
      if (!ss) bad("malformed record");
      std::vector<int> partner;
      std::istringstream ps(enc);
      std::string tok;
      while (std::getline(ps, tok, '.')) partner.push_back(std::stoi(tok));
      const Inventory& inv = by_name[key.first];
      auto links = vertex_links(GluingDescription::standard(inv, partner));
      current.records.push_back(make_record(inv, partner, orbit, links));
    } else if (tag == "END") {
      if (!open || static_cast<std::int64_t>(current.records.size()) != expected) bad("branch record count mismatch");
      done[key] = std::move(current);
      open = false;
    } else if (!tag.empty()) {
      bad("unknown tag '" + tag + "'");
    }
  }
  // A trailing branch without END was interrupted and is recomputed.
  return done;
}

void append_checkpoint(std::ofstream& out, const BranchKey& key, const BranchResult& r) {
  out << "BRANCH " << key.first << ' ' << key.second << ' ' << r.stats.matchings << ' ' << r.stats.retained_matchings
      << ' ' << r.stats.orbits << ' ' << r.stats.retained_orbits << ' ' << r.records.size() << '\n';
  for (const auto& rec : r.records) {
    out << "R " << rec.orbit_size << ' ';
    for (std::size_t f = 0; f < rec.partner.size(); ++f) out << (f ? "." : "") << rec.partner[f];
    out << '\n';
  }
  out << "END\n";
  out.flush();
}

}  // namespace

CensusStats& CensusStats::operator+=(const CensusStats& o) {
  matchings += o.matchings;
  retained_matchings += o.retained_matchings;
  orbits += o.orbits;
  retained_orbits += o.retained_orbits;
  return *this;
}

void enumerate_gluings(const Inventory& inv,
                       const std::function<void(const GluingDescription&, std::int64_t orbit_size)>& emit) {
  OrderlySearch search(inv);
  for (int b = 0; b < search.branches(); ++b)
    search.run_branch(b, [&](const std::vector<int>& partner, std::int64_t orbit) {
      emit(GluingDescription::standard(inv, partner), orbit);
    });
}

std::string format_record(const CensusRecord& r) {
  int tori = static_cast<int>(r.links.links.size());
  return "GLUING sig=" + r.signature + " inventory=" + r.inventory + " links=torus×" + std::to_string(tori) +
         " h1=" + to_string(r.h1);
}

CensusResult run_census(const std::vector<Inventory>& inventories, const CensusOptions& options) {
  const int workers = worker_count(options);
  std::vector<std::pair<int, int>> tasks;  // (inventory, branch)
  for (int i = 0; i < static_cast<int>(inventories.size()); ++i) {
    int faces = 0;
    for (const auto& d : inventories[i]) faces += d.face_count();
    for (int b = 0; b < faces - 1; ++b) tasks.push_back({i, b});
  }

  std::map<BranchKey, BranchResult> done;
  std::ofstream checkpoint;
  if (!options.checkpoint.empty()) {
    done = load_checkpoint(options.checkpoint, inventories);
    bool fresh = done.empty();
    {
      std::ifstream probe(options.checkpoint);
      fresh = fresh && !probe.good();
    }
    if (fresh) {
      checkpoint.open(options.checkpoint);
      checkpoint << kCheckpointHeader << '\n';
    } else {
      // Rewrite only the completed branches so an interrupted tail is dropped.
      checkpoint.open(options.checkpoint, std::ios::trunc);
      checkpoint << kCheckpointHeader << '\n';
      for (const auto& [key, r] : done) append_checkpoint(checkpoint, key, r);
    }
    if (!checkpoint) fail(ErrorKind::Precondition, "cannot write checkpoint " + options.checkpoint);
  }

  std::mutex mu;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  auto work = [&] {
    try {
      std::map<int, std::unique_ptr<OrderlySearch>> searches;
      for (;;) {
        std::size_t t = next++;
        if (t >= tasks.size()) return;
        auto [i, b] = tasks[t];
        BranchKey key{to_string(inventories[i]), b};
        {
          std::lock_guard lock(mu);
          if (done.count(key)) continue;
        }
        auto& search = searches[i];
        if (!search) search = std::make_unique<OrderlySearch>(inventories[i]);
        BranchResult r = run_branch(inventories[i], *search, b);
        std::lock_guard lock(mu);
        if (checkpoint.is_open()) append_checkpoint(checkpoint, key, r);
        done[key] = std::move(r);
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      next = tasks.size();
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  CensusResult result;
  for (const auto& inv : inventories) result.per_inventory[to_string(inv)] = {};
  for (auto& [key, r] : done) {
    result.per_inventory[key.first] += r.stats;
    result.total += r.stats;
    for (auto& rec : r.records) result.records.push_back(std::move(rec));
  }
  std::sort(result.records.begin(), result.records.end(),
            [](const CensusRecord& a, const CensusRecord& b) { return a.signature < b.signature; });
  return result;
}

CensusResult run_mom_census(int n, const CensusOptions& options) {
  return run_census(polyhedron_inventories(n), options);
}

std::string format_census(int n, const CensusResult& r) {
  std::ostringstream out;
  out << "CENSUS mom=" << n << " inventories=";
  bool first = true;
  for (const auto& inv : polyhedron_inventories(n)) {
    out << (first ? "" : ",") << to_string(inv);
    first = false;
  }
  out << '\n';
  auto stats = [&](const CensusStats& s) {
    out << " matchings=" << s.matchings << " orbits=" << s.orbits << " retained_matchings=" << s.retained_matchings
        << " retained_orbits=" << s.retained_orbits << '\n';
  };
  for (const auto& inv : polyhedron_inventories(n)) {
    out << "INVENTORY " << to_string(inv);
    stats(r.per_inventory.at(to_string(inv)));
  }
  out << "TOTAL";
  stats(r.total);
  for (const auto& rec : r.records) out << format_record(rec) << '\n';
  return out.str();
}

}  // namespace momtech
