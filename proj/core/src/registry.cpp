#include "adseg/registry.hpp"

#include <cctype>
#include <fstream>

#include "adseg/error.hpp"

namespace adseg {
namespace {

std::string lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

}  // namespace

std::string_view genre_name(AdGenre g) {
  switch (g) {
    case AdGenre::Finance: return "finance";
    case AdGenre::Lifestyle: return "lifestyle";
    case AdGenre::Entertainment: return "entertainment";
  }
  return "";
}

std::optional<AdGenre> parse_genre(std::string_view text) {
  const std::string key = lower(text);
  if (key == "finance") return AdGenre::Finance;
  if (key == "lifestyle" || key == "lifestyles") return AdGenre::Lifestyle;
  if (key == "entertainment") return AdGenre::Entertainment;
  return std::nullopt;
}

AdvertRegistry AdvertRegistry::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open registry file: " + path);
  AdvertRegistry reg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto tab = view.find('\t');
    if (tab == std::string_view::npos)
      throw ParseError(ErrorKind::MalformedLine, line_no, "registry",
                       "expected 'advert<TAB>genre'");
    std::string advert(trim(view.substr(0, tab)));
    std::string_view genre_text = trim(view.substr(tab + 1));
    if (advert.empty())
      throw ParseError(ErrorKind::MalformedLine, line_no, "advert",
                       "empty advert id");
    auto genre = parse_genre(genre_text);
    if (!genre)
      throw ParseError(ErrorKind::MalformedLine, line_no, "genre",
                       "unknown genre '" + std::string(genre_text) + "'");
    reg.add(advert, *genre);
  }
  return reg;
}

void AdvertRegistry::add(const std::string& advert, AdGenre genre) {
  auto [it, inserted] = genres_.emplace(advert, genre);
  if (!inserted && it->second != genre)
    throw Error(ErrorKind::BadConfig,
                "advert '" + advert + "' registered under two genres");
}

std::optional<AdGenre> AdvertRegistry::genre_of(std::string_view advert) const {
  auto it = genres_.find(advert);
  if (it == genres_.end()) return std::nullopt;
  return it->second;
}

AdGenre AdvertRegistry::require(std::string_view advert) const {
  auto g = genre_of(advert);
  if (!g)
    throw Error(ErrorKind::UnregisteredAdvert,
                "advert '" + std::string(advert) + "' not in registry");
  return *g;
}

std::vector<std::string> AdvertRegistry::adverts_in(AdGenre genre) const {
  std::vector<std::string> out;
  for (const auto& [advert, g] : genres_)
    if (g == genre) out.push_back(advert);
  return out;
}

void AdvertRegistry::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write registry: " + path);
  for (const auto& [advert, g] : genres_)
    out << advert << '\t' << genre_name(g) << '\n';
}

}  // namespace adseg
