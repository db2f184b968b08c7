#ifndef ADSEG_RECORD_HPP
#define ADSEG_RECORD_HPP

#include <string>
#include <vector>

#include "adseg/stage.hpp"
#include "adseg/timestamp.hpp"

namespace adseg {

// One parsed log event. app_list is a set: sorted, duplicates collapsed
// on parse. An empty app list is valid (the user still counts toward
// interaction statistics, just not toward clustering).
struct InteractionRecord {
  std::string user_id;
  std::vector<std::string> app_list;
  Timestamp ts;
  InteractionStage stage = InteractionStage::Impression;
  std::string advert;
  std::string publisher;
  std::string site;

  bool operator==(const InteractionRecord&) const = default;
};

}  // namespace adseg

#endif  // ADSEG_RECORD_HPP
