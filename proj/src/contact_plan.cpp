#include "detroute/contact_plan.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "detroute/rng.hpp"
#include "json.hpp"

namespace detroute {

using nlohmann::json;

ContactPlan::ContactPlan(Usec epoch, Usec horizon, Millibits buffer, std::vector<std::string> nodes,
                         std::vector<Contact> contacts)
    : epoch_(epoch), horizon_(horizon), buffer_(buffer), nodes_(std::move(nodes)), contacts_(std::move(contacts)) {
  validate();
  for (int i = 0; i < static_cast<int>(contacts_.size()); ++i) {
    by_link_[{contacts_[i].from, contacts_[i].to}].push_back(i);
  }
  for (auto& [link, idx] : by_link_) {
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return contacts_[a].t_start < contacts_[b].t_start; });
  }
}

void ContactPlan::validate() const {
  if (nodes_.size() < 2) throw ValidationError("plan needs at least 2 nodes");
  if (horizon_ <= 0) throw ValidationError("plan horizon must be positive");
  if (buffer_ < 0) throw ValidationError("buffer capacity must be non-negative");
  std::set<std::string> seen(nodes_.begin(), nodes_.end());
  if (seen.size() != nodes_.size()) throw ValidationError("duplicate node name");

  std::map<std::pair<int, int>, std::vector<std::pair<Usec, Usec>>> windows;
  for (const Contact& c : contacts_) {
    if (c.from < 0 || c.from >= node_count() || c.to < 0 || c.to >= node_count())
      throw ValidationError("contact endpoint is not a valid node id");
    if (c.from == c.to) throw ValidationError("contact endpoints must differ");
    if (c.t_start >= c.t_end) throw ValidationError("contact has t_start >= t_end");
    if (c.t_start < epoch_ || c.t_end > epoch_ + horizon_)
      throw ValidationError("contact interval outside the plan horizon");
    if (c.delay <= 0) throw ValidationError("transmission delay must be positive");
    if (c.segments.empty()) throw ValidationError("contact has no bandwidth segments");
    Usec cursor = c.t_start;
    for (const BandwidthSegment& s : c.segments) {
      if (s.t_from != cursor) throw ValidationError("bandwidth segments must tile the contact");
      if (s.t_to <= s.t_from) throw ValidationError("bandwidth segment has non-positive length");
      if (s.rate < 0) throw ValidationError("bandwidth must be non-negative");
      cursor = s.t_to;
    }
    if (cursor != c.t_end) throw ValidationError("bandwidth segments must tile the contact");
    windows[{c.from, c.to}].push_back({c.t_start, c.t_end});
  }
  for (auto& [link, w] : windows) {
    std::sort(w.begin(), w.end());
    for (size_t i = 1; i < w.size(); ++i) {
      if (w[i].first < w[i - 1].second)
        throw ValidationError("overlapping contacts for the same directed pair");
    }
  }
}

int ContactPlan::node_id(const std::string& name) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), name);
  if (it == nodes_.end()) throw ValidationError("unknown node name: " + name);
  return static_cast<int>(it - nodes_.begin());
}

const std::vector<int>& ContactPlan::contacts_between(int from, int to) const {
  auto it = by_link_.find({from, to});
  return it == by_link_.end() ? empty_ : it->second;
}

double ContactPlan::bandwidth_at(int from, int to, Usec t) const {
  if (from < 0 || from >= node_count() || to < 0 || to >= node_count())
    throw ValidationError("bandwidth_at: unknown node id");
  for (int idx : contacts_between(from, to)) {
    const Contact& c = contacts_[idx];
    if (t < c.t_start || t >= c.t_end) continue;
    for (const BandwidthSegment& s : c.segments) {
      if (t >= s.t_from && t < s.t_to) return kbps_to_mbps(s.rate);
    }
  }
  return 0.0;
}

Millibits ContactPlan::capacity_integral(int from, int to, Usec t0, Usec t1) const {
  if (t1 <= t0) return 0;
  Millibits total = 0;
  for (int idx : contacts_between(from, to)) {
    const Contact& c = contacts_[idx];
    if (c.t_end <= t0 || c.t_start >= t1) continue;
    for (const BandwidthSegment& s : c.segments) {
      Usec lo = std::max(t0, s.t_from);
      Usec hi = std::min(t1, s.t_to);
      if (hi > lo) total += s.rate * (hi - lo);
    }
  }
  return total;
}

Kbps ContactPlan::contact_mean_rate(const Contact& c) {
  Millibits total = 0;
  for (const BandwidthSegment& s : c.segments) total += s.rate * (s.t_to - s.t_from);
  return total / (c.t_end - c.t_start);
}

// ---------------------------------------------------------------------------
// JSON format. All times are integer milliseconds relative to the epoch.

namespace {

Usec require_int_ms(const json& j, const char* field, Usec epoch) {
  if (!j.contains(field)) throw ParseError(std::string("missing field: ") + field);
  if (!j[field].is_number_integer()) throw ParseError(std::string("field must be an integer: ") + field);
  return epoch + ms(j[field].get<std::int64_t>());
}

double require_number(const json& j, const char* field) {
  if (!j.contains(field)) throw ParseError(std::string("missing field: ") + field);
  if (!j[field].is_number()) throw ParseError(std::string("field must be a number: ") + field);
  return j[field].get<double>();
}

std::string require_string(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_string())
    throw ParseError(std::string("field must be a string: ") + field);
  return j[field].get<std::string>();
}

}  // namespace

std::string ContactPlan::to_json_string() const {
  json j;
  j["epoch_ms"] = epoch_ / kUsecPerMs;
  j["horizon_ms"] = horizon_ / kUsecPerMs;
  j["buffer_mb"] = millibits_to_mb(buffer_);
  j["nodes"] = nodes_;
  json arr = json::array();
  for (const Contact& c : contacts_) {
    json jc;
    jc["from"] = nodes_[c.from];
    jc["to"] = nodes_[c.to];
    jc["t_start_ms"] = (c.t_start - epoch_) / kUsecPerMs;
    jc["t_end_ms"] = (c.t_end - epoch_) / kUsecPerMs;
    jc["delay_ms"] = usec_to_ms(c.delay);
    json segs = json::array();
    for (const BandwidthSegment& s : c.segments) {
      segs.push_back({{"t_from_ms", (s.t_from - epoch_) / kUsecPerMs},
                      {"t_to_ms", (s.t_to - epoch_) / kUsecPerMs},
                      {"mbps", kbps_to_mbps(s.rate)}});
    }
    jc["bandwidth"] = std::move(segs);
    arr.push_back(std::move(jc));
  }
  j["contacts"] = std::move(arr);
  return j.dump(2) + "\n";
}

ContactPlan ContactPlan::from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.contains("epoch_ms") || !j["epoch_ms"].is_number_integer())
    throw ParseError("field must be an integer: epoch_ms");
  Usec epoch = ms(j["epoch_ms"].get<std::int64_t>());
  if (!j.contains("horizon_ms") || !j["horizon_ms"].is_number_integer())
    throw ParseError("field must be an integer: horizon_ms");
  Usec horizon = ms(j["horizon_ms"].get<std::int64_t>());
  Millibits buffer = mb_to_millibits(require_number(j, "buffer_mb"));
  if (!j.contains("nodes") || !j["nodes"].is_array()) throw ParseError("field must be an array: nodes");
  std::vector<std::string> nodes;
  for (const auto& n : j["nodes"]) {
    if (!n.is_string()) throw ParseError("nodes entries must be strings");
    nodes.push_back(n.get<std::string>());
  }
  std::map<std::string, int> ids;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) ids[nodes[i]] = i;

  if (!j.contains("contacts") || !j["contacts"].is_array())
    throw ParseError("field must be an array: contacts");
  std::vector<Contact> contacts;
  for (const auto& jc : j["contacts"]) {
    Contact c;
    std::string from = require_string(jc, "from");
    std::string to = require_string(jc, "to");
    if (!ids.count(from)) throw ParseError("contact references unknown node: " + from);
    if (!ids.count(to)) throw ParseError("contact references unknown node: " + to);
    c.from = ids[from];
    c.to = ids[to];
    c.t_start = require_int_ms(jc, "t_start_ms", epoch);
    c.t_end = require_int_ms(jc, "t_end_ms", epoch);
    c.delay = ms_to_usec(require_number(jc, "delay_ms"));
    if (!jc.contains("bandwidth") || !jc["bandwidth"].is_array())
      throw ParseError("field must be an array: bandwidth");
    for (const auto& js : jc["bandwidth"]) {
      BandwidthSegment s;
      s.t_from = require_int_ms(js, "t_from_ms", epoch);
      s.t_to = require_int_ms(js, "t_to_ms", epoch);
      s.rate = mbps_to_kbps(require_number(js, "mbps"));
      c.segments.push_back(s);
    }
    contacts.push_back(std::move(c));
  }
  return ContactPlan(epoch, horizon, buffer, std::move(nodes), std::move(contacts));
}

ContactPlan load_contact_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open contact plan file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ContactPlan::from_json_string(ss.str());
}

void save_contact_plan(const ContactPlan& plan, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write contact plan file: " + path);
  out << plan.to_json_string();
}

// ---------------------------------------------------------------------------
// Walker-delta generator.

namespace {

struct Vec3 {
  double x, y, z;
};

// Position of a satellite on a circular inclined orbit at time t.
Vec3 orbit_position(int plane, int slot, const WalkerOptions& opt, double t_sec) {
  constexpr double kEarthRadiusKm = 6371.0;
  constexpr double kMuKm3PerS2 = 398600.4418;
  const double a = kEarthRadiusKm + opt.altitude_km;
  const double omega = std::sqrt(kMuKm3PerS2 / (a * a * a));
  const double raan = 2.0 * std::numbers::pi * plane / opt.planes;
  const double anomaly =
      2.0 * std::numbers::pi * slot / opt.sats_per_plane + omega * t_sec;
  const double inc = opt.inclination_deg * std::numbers::pi / 180.0;

  double xp = a * std::cos(anomaly);
  double yp = a * std::sin(anomaly);
  // rotate by inclination about x, then by RAAN about z
  double x1 = xp;
  double y1 = yp * std::cos(inc);
  double z1 = yp * std::sin(inc);
  return {x1 * std::cos(raan) - y1 * std::sin(raan), x1 * std::sin(raan) + y1 * std::cos(raan), z1};
}

Usec geometric_delay(int pa, int sa, int pb, int sb, const WalkerOptions& opt, Usec t_abs) {
  constexpr double kLightSpeedKmPerS = 299792.458;
  double t_sec = static_cast<double>(t_abs - opt.epoch) / 1e6;
  Vec3 a = orbit_position(pa, sa, opt, t_sec);
  Vec3 b = orbit_position(pb, sb, opt, t_sec);
  double d = std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
  Usec delay = static_cast<Usec>(std::llround(d / kLightSpeedKmPerS * 1e6));
  return std::max<Usec>(delay, 1);
}

std::vector<BandwidthSegment> draw_segments(Usec t0, Usec t1, const WalkerOptions& opt, Rng& rng) {
  std::vector<BandwidthSegment> segs;
  Usec step = opt.segment_len > 0 ? opt.segment_len : (t1 - t0);
  for (Usec s = t0; s < t1; s += step) {
    BandwidthSegment seg;
    seg.t_from = s;
    seg.t_to = std::min(s + step, t1);
    seg.rate = mbps_to_kbps(rng.uniform_real(opt.bw_min_mbps, opt.bw_max_mbps));
    segs.push_back(seg);
  }
  return segs;
}

}  // namespace

ContactPlan generate_walker_constellation(const WalkerOptions& opt) {
  if (opt.planes < 1 || opt.sats_per_plane < 1)
    throw std::invalid_argument("constellation dimensions must be positive");
  if (opt.horizon <= 0) throw std::invalid_argument("horizon must be positive");
  if (opt.bw_min_mbps > opt.bw_max_mbps || opt.bw_min_mbps < 0)
    throw std::invalid_argument("empty bandwidth range");
  if (opt.delay_mode == DelayMode::Sampled &&
      (opt.delay_min_ms > opt.delay_max_ms || opt.delay_min_ms <= 0))
    throw std::invalid_argument("empty delay range");

  const int P = opt.planes;
  const int S = opt.sats_per_plane;
  const int n = P * S;
  std::vector<std::string> nodes;
  nodes.reserve(n);
  for (int i = 0; i < n; ++i) nodes.push_back("u" + std::to_string(i));

  auto id_of = [&](int p, int s) { return p * S + s; };

  // +Grid neighbours, deduplicated into undirected pairs.
  std::set<std::pair<int, int>> pairs;
  for (int p = 0; p < P; ++p) {
    for (int s = 0; s < S; ++s) {
      int me = id_of(p, s);
      int cand[4] = {id_of(p, (s + 1) % S), id_of(p, (s - 1 + S) % S),
                     id_of((p + 1) % P, s), id_of((p - 1 + P) % P, s)};
      for (int other : cand) {
        if (other == me) continue;
        pairs.insert({std::min(me, other), std::max(me, other)});
      }
    }
  }

  Rng rng(opt.seed);
  const Usec t0 = opt.epoch;
  const Usec t1 = opt.epoch + opt.horizon;
  std::vector<Contact> contacts;

  for (const auto& [a, b] : pairs) {
    // availability windows for the pair
    std::vector<std::pair<Usec, Usec>> windows;
    if (opt.contact_on <= 0 || opt.contact_off <= 0) {
      windows.push_back({t0, t1});
    } else {
      Usec cycle = opt.contact_on + opt.contact_off;
      Usec phase = ms(rng.uniform_i64(0, cycle / kUsecPerMs - 1));
      for (Usec w = t0 - cycle + phase; w < t1; w += cycle) {
        Usec ws = std::max(w, t0);
        Usec we = std::min(w + opt.contact_on, t1);
        if (we > ws) windows.push_back({ws, we});
      }
    }
    for (const auto& [ws, we] : windows) {
      Usec delay;
      if (opt.delay_mode == DelayMode::Geometric) {
        delay = geometric_delay(a / S, a % S, b / S, b % S, opt, ws);
      } else {
        delay = ms_to_usec(rng.uniform_real(opt.delay_min_ms, opt.delay_max_ms));
      }
      Contact fwd;
      fwd.from = a;
      fwd.to = b;
      fwd.t_start = ws;
      fwd.t_end = we;
      fwd.delay = delay;
      fwd.segments = draw_segments(ws, we, opt, rng);
      Contact rev = fwd;
      rev.from = b;
      rev.to = a;
      rev.segments = draw_segments(ws, we, opt, rng);
      contacts.push_back(std::move(fwd));
      contacts.push_back(std::move(rev));
    }
  }

  return ContactPlan(opt.epoch, opt.horizon, opt.buffer, std::move(nodes), std::move(contacts));
}

}  // namespace detroute
