#ifndef ADSEG_STAGE_HPP
#define ADSEG_STAGE_HPP

#include <array>
#include <optional>
#include <string_view>

namespace adseg {

// Funnel position, ordered by progression. VideoComplete is maximal.
enum class InteractionStage : int {
  Impression = 0,
  Tap = 1,
  LoadVideo = 2,
  PlayVideo = 3,
  Video25 = 4,
  Video50 = 5,
  Video75 = 6,
  VideoComplete = 7,
};

inline constexpr int kStageCount = 8;

constexpr std::array<InteractionStage, kStageCount> all_stages() {
  return {InteractionStage::Impression, InteractionStage::Tap,
          InteractionStage::LoadVideo,  InteractionStage::PlayVideo,
          InteractionStage::Video25,    InteractionStage::Video50,
          InteractionStage::Video75,    InteractionStage::VideoComplete};
}

constexpr int stage_ordinal(InteractionStage s) { return static_cast<int>(s); }

// Canonical item name used in baskets, store files and rule output:
// impression, tap, loadvideo, playvideo, video25, video50, video75, video100.
std::string_view stage_item_name(InteractionStage s);

// Case-insensitive; spaces, '%', '_' and '-' are ignored, so the raw log
// forms ("Load Video", "25% Video", "complete video") parse to the same
// stages as the canonical item names. Unknown names are rejected.
std::optional<InteractionStage> parse_stage(std::string_view text);

}  // namespace adseg

#endif  // ADSEG_STAGE_HPP
