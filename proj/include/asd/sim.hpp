// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asd/audio_features.hpp"
#include "asd/geometry.hpp"
#include "asd/visual.hpp"

namespace asd {

struct ParticipantSpec {
  std::int64_t id = 0;
  double azimuth = 0.0;       // radians
  double altitude = 0.0;      // radians
  double distance_m = 1.5;    // from the array center
  double head_width_m = 0.16;
};

struct SpeechModelParams {
  double mean_on_s = 4.0;
  double mean_off_s = 6.0;
};

struct MeetingSpec {
  std::uint64_t seed = 1;
  double duration_s = 12.0;
  std::vector<ParticipantSpec> participants;
  SpeechModelParams speech;
  bool allow_overlap = true;
  double snr_db = 25.0;
  ArrayGeometry geometry;
  PanoramaDims panorama;
  double fps = 7.5;        // video track rate
  double tick_rate = 7.5;  // prediction rate
  int sample_rate = 16000;
  int label_step_ms = 200;
  double drift_amplitude = 0.0;  // optional slow azimuth wander, radians
  double drift_period_s = 30.0;

  void validate() const;
  int frame_count() const { return static_cast<int>(duration_s * fps); }
  int tick_count() const { return static_cast<int>(duration_s * tick_rate); }
  int label_bins() const { return static_cast<int>(duration_s * 1000.0 / label_step_ms); }
};

struct MeetingRecord {
  MeetingSpec spec;
  MultiChannelAudio audio;
  // tracks[frame][i] is participant i's head at that frame
  std::vector<std::vector<HeadObservation>> tracks;
  // labels[bin][i]: is participant i speaking in [bin*step, (bin+1)*step) ms
  std::vector<std::vector<std::uint8_t>> labels;
  // per-participant source envelope sampled at frame centers; drives the
  // mouth rendering (recomputed from the spec when a record is loaded)
  std::vector<std::vector<float>> envelope_by_frame;

  bool label_at(int bin, int participant) const {
    return labels[static_cast<size_t>(bin)][static_cast<size_t>(participant)] != 0;
  }
  int participant_index(std::int64_t id) const;
};

/// Deterministic synthesis of a full meeting from its spec: harmonic-complex
/// voices gated by on/off speech timelines, far-field fractional delays to
/// each microphone, 1/distance gains, common noise at the configured SNR,
/// peak normalization.
MeetingRecord generate(const MeetingSpec& spec);

/// True if the participant is speaking in the 200 ms bin containing time_ms
/// (right-open bins). Throws when time_ms is outside the meeting.
bool labels_at(const MeetingRecord& record, double time_ms, int participant);

/// Label bin covering a prediction tick: the bin containing the tick's end
/// time.
int tick_label_bin(const MeetingSpec& spec, int tick);

/// End of tick t in audio samples (exclusive), exact integer arithmetic.
std::int64_t tick_end_sample(const MeetingSpec& spec, int tick);

/// Shifts every participant azimuth by angle (mod 2pi); everything else kept.
MeetingSpec rotate_scene(const MeetingSpec& spec, double angle);

struct RenderParams {
  int region_w = 320;
  int region_h = 352;
  double margin_w = 1.9;  // region width as a multiple of the head box width
  double margin_h = 2.1;
  double mouth_amplitude = 0.4;
  double jitter_px = 2.0;
};

/// Rasterizes the synthetic face of one participant around its head box for
/// a given frame: per-identity oval texture plus a mouth whose brightness
/// follows the source envelope while speaking.
FrameRegion render_face(const MeetingRecord& record, int participant, int frame_index,
                        const RenderParams& params = {});

/// Randomized meeting construction used by the benchmark definition.
struct RandomMeetingParams {
  int min_participants = 6;
  int max_participants = 10;
  double duration_s = 12.0;
  double snr_db = 25.0;
  double min_azimuth_separation = 0.20;  // radians
  double min_distance_m = 0.6;
  double max_distance_m = 2.5;
  double max_altitude = 0.10;
  SpeechModelParams speech;
};

MeetingSpec random_meeting_spec(std::uint64_t seed, const RandomMeetingParams& params);

// --- on-disk meeting directory ---------------------------------------------
// audio.pcm   interleaved little-endian f32, M channels, sample_rate Hz
// tracks.jsonl one JSON object per (frame, participant)
// labels.csv  time_ms,participant_id,speaking
// meta.json   the full spec including the seed
void save_meeting(const MeetingRecord& record, const std::string& dir);
MeetingRecord load_meeting(const std::string& dir);

}  // namespace asd
