#pragma once

#include <istream>
#include <ostream>
#include <vector>

#include "aisclass/cleaning.hpp"
#include "aisclass/kinematics.hpp"
#include "aisclass/segmentation.hpp"

namespace aisclass {

// JSON-lines stores, one object per line. Absent optional fields are null.
//
// track:     {"mmsi", "ship_type", "class", "extras": {"nav_status", "length",
//             "width"}, "points": [{"t", "lat", "lon", "sog", "cog",
//             "nav_status", "ship_type", "length", "width", "mobile_class"}]}
// kinematic: {"mmsi", "ship_type", "class", "extras", "origin": {"lat", "lon"},
//             "source": "imm"|"raw", "underflow_steps",
//             "points": [{"t", "x", "y", "vx", "vy", "speed", "course", "mu"}]}
// segment:   {"mmsi", "index", "ship_type", "label", "extras", "points": [...]}
//             with kinematic points.
//
// Readers throw DataError naming the offending line.

void write_tracks_jsonl(std::ostream& out, const std::vector<Track>& tracks);
std::vector<Track> read_tracks_jsonl(std::istream& in);

void write_kinematic_jsonl(std::ostream& out, const std::vector<KinematicTrack>& tracks);
std::vector<KinematicTrack> read_kinematic_jsonl(std::istream& in);

void write_segments_jsonl(std::ostream& out, const std::vector<Segment>& segments);
std::vector<Segment> read_segments_jsonl(std::istream& in);

}  // namespace aisclass
