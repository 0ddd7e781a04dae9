#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "detroute/units.hpp"

namespace detroute {

/// One constant-rate slice of a contact. Half-open interval [t_from, t_to).
struct BandwidthSegment {
  Usec t_from = 0;
  Usec t_to = 0;
  Kbps rate = 0;
};

/// A directed link availability window with piecewise-constant bandwidth and
/// a fixed propagation delay. Times are absolute microseconds.
struct Contact {
  int from = -1;
  int to = -1;
  Usec t_start = 0;
  Usec t_end = 0;
  Usec delay = 0;
  std::vector<BandwidthSegment> segments;
};

/// Immutable time-varying topology: nodes, directed contacts, a uniform
/// on-board buffer per node. Construction validates all invariants; after
/// that the plan is safe for concurrent reads.
class ContactPlan {
 public:
  ContactPlan(Usec epoch, Usec horizon, Millibits buffer, std::vector<std::string> nodes,
              std::vector<Contact> contacts);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::vector<std::string>& node_names() const { return nodes_; }
  const std::string& node_name(int id) const { return nodes_.at(id); }
  int node_id(const std::string& name) const;

  Usec epoch() const { return epoch_; }
  Usec horizon() const { return horizon_; }
  Millibits buffer_capacity() const { return buffer_; }

  const std::vector<Contact>& contacts() const { return contacts_; }
  /// Indices into contacts() for the directed pair, sorted by t_start.
  const std::vector<int>& contacts_between(int from, int to) const;

  /// Instantaneous bandwidth in Mbps at absolute time t (0 when no contact
  /// covers t). Throws on unknown node ids.
  double bandwidth_at(int from, int to, Usec t) const;

  /// Exact integral of the link bandwidth over [t0, t1), in millibits.
  Millibits capacity_integral(int from, int to, Usec t0, Usec t1) const;

  /// Mean bandwidth of one contact over its whole window, in kbps (rounded
  /// down). Used by average-rate admission checks.
  static Kbps contact_mean_rate(const Contact& c);

  std::string to_json_string() const;
  static ContactPlan from_json_string(const std::string& text);

 private:
  void validate() const;

  Usec epoch_;
  Usec horizon_;
  Millibits buffer_;
  std::vector<std::string> nodes_;
  std::vector<Contact> contacts_;
  std::map<std::pair<int, int>, std::vector<int>> by_link_;
  std::vector<int> empty_;
};

enum class DelayMode { Sampled, Geometric };

/// Parameters for the synthetic Walker-delta constellation generator.
/// Satellites are wired +Grid style: intra-plane ring neighbours plus the
/// same slot in the two adjacent planes. Optional on/off windows emulate
/// link churn; segment_len sets the granularity of bandwidth variation.
struct WalkerOptions {
  int planes = 1;
  int sats_per_plane = 1;
  double altitude_km = 550.0;
  double inclination_deg = 53.0;
  Usec horizon = 0;
  double bw_min_mbps = 500.0;
  double bw_max_mbps = 2000.0;
  DelayMode delay_mode = DelayMode::Sampled;
  double delay_min_ms = 5.0;
  double delay_max_ms = 15.0;
  std::uint64_t seed = 0;
  Usec epoch = 0;
  Millibits buffer = 4000 * kMillibitsPerMb;  // 500 MB
  Usec segment_len = ms(1000);
  Usec contact_on = 0;   // 0 = contacts span the whole horizon
  Usec contact_off = 0;
};

ContactPlan generate_walker_constellation(const WalkerOptions& opt);

ContactPlan load_contact_plan(const std::string& path);
void save_contact_plan(const ContactPlan& plan, const std::string& path);

}  // namespace detroute
