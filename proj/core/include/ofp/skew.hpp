#pragma once

#include <iosfwd>

namespace ofp::harness {

/// Turns a single-trial event log into plot data: one row per data
/// transmission with the position of the transmitter it relayed from
/// (columns role,x,y,parent_x,parent_y; the source row has no parent). A
/// leading comment records the coverage radius. An empty log yields only the
/// header. Returns the number of rows written.
int render_skew(std::istream& log, std::ostream& out);

}  // namespace ofp::harness
