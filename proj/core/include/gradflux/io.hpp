#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "gradflux/profile.hpp"

namespace gradflux {

/// Snapshot CSV: header `x,u,theta`, one row per breakpoint of the merged
/// partition, jumps emitted as two consecutive rows with equal x.  Isolated
/// theta point values are materialized as a narrow ramp so the oscillation
/// survives the round trip.
void write_snapshot_csv(std::ostream& os, const Profile& p, const ThetaField& t);
void write_snapshot_csv(const std::string& path, const Profile& p,
                        const ThetaField& t);

std::pair<Profile, ThetaField> read_snapshot_csv(std::istream& is,
                                                 const Domain& d);
std::pair<Profile, ThetaField> read_snapshot_csv(const std::string& path,
                                                 const Domain& d);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace gradflux
