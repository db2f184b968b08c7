#ifndef ADSEG_REGISTRY_HPP
#define ADSEG_REGISTRY_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adseg {

enum class AdGenre : int { Finance = 0, Lifestyle = 1, Entertainment = 2 };

inline constexpr int kGenreCount = 3;

constexpr std::array<AdGenre, kGenreCount> all_genres() {
  return {AdGenre::Finance, AdGenre::Lifestyle, AdGenre::Entertainment};
}

std::string_view genre_name(AdGenre g);
std::optional<AdGenre> parse_genre(std::string_view text);

// Maps every advert to exactly one genre. File form is TSV:
//   advert_id <TAB> genre      genre in {finance, lifestyle, entertainment}
class AdvertRegistry {
public:
  static AdvertRegistry load(const std::string& path);

  // Error if the advert is already registered under a different genre.
  void add(const std::string& advert, AdGenre genre);

  std::optional<AdGenre> genre_of(std::string_view advert) const;

  // Throws UnregisteredAdvert.
  AdGenre require(std::string_view advert) const;

  std::vector<std::string> adverts_in(AdGenre genre) const;

  std::size_t size() const { return genres_.size(); }
  const std::map<std::string, AdGenre, std::less<>>& entries() const {
    return genres_;
  }

  void save(const std::string& path) const;

private:
  std::map<std::string, AdGenre, std::less<>> genres_;
};

}  // namespace adseg

#endif  // ADSEG_REGISTRY_HPP
