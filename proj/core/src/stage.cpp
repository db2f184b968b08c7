#include "adseg/stage.hpp"

#include <cctype>
#include <string>

namespace adseg {

std::string_view stage_item_name(InteractionStage s) {
  switch (s) {
    case InteractionStage::Impression: return "impression";
    case InteractionStage::Tap: return "tap";
    case InteractionStage::LoadVideo: return "loadvideo";
    case InteractionStage::PlayVideo: return "playvideo";
    case InteractionStage::Video25: return "video25";
    case InteractionStage::Video50: return "video50";
    case InteractionStage::Video75: return "video75";
    case InteractionStage::VideoComplete: return "video100";
  }
  return "";
}

std::optional<InteractionStage> parse_stage(std::string_view text) {
  std::string key;
  key.reserve(text.size());
  for (char c : text) {
    if (c == ' ' || c == '%' || c == '_' || c == '-') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key == "impression") return InteractionStage::Impression;
  if (key == "tap") return InteractionStage::Tap;
  if (key == "loadvideo") return InteractionStage::LoadVideo;
  if (key == "playvideo") return InteractionStage::PlayVideo;
  if (key == "video25" || key == "25video") return InteractionStage::Video25;
  if (key == "video50" || key == "50video") return InteractionStage::Video50;
  if (key == "video75" || key == "75video") return InteractionStage::Video75;
  if (key == "video100" || key == "videocomplete" || key == "completevideo")
    return InteractionStage::VideoComplete;
  return std::nullopt;
}

}  // namespace adseg
