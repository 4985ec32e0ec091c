#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace werewolf::speech {

struct VoiceProfile {
  std::string voice_id;
  std::string persona;       // display name
  std::string reference_id;  // handed to the TTS backend
  friend bool operator==(const VoiceProfile&, const VoiceProfile&) = default;
};

void to_json(nlohmann::json& j, const VoiceProfile& v);
void from_json(const nlohmann::json& j, VoiceProfile& v);

/// Never empty; ids are unique.
class VoiceRegistry {
 public:
  explicit VoiceRegistry(std::vector<VoiceProfile> profiles);

  /// Eight generic built-in voices.
  static VoiceRegistry builtin();
  static VoiceRegistry from_json(const nlohmann::json& j);

  const VoiceProfile* find(const std::string& voice_id) const;
  /// Throws std::invalid_argument for unknown ids.
  const VoiceProfile& at(const std::string& voice_id) const;
  bool contains(const std::string& voice_id) const { return find(voice_id) != nullptr; }

  const std::vector<VoiceProfile>& profiles() const noexcept { return profiles_; }
  std::size_t size() const noexcept { return profiles_.size(); }

  /// Default seat assignment: voices in registry order, wrapping around.
  const VoiceProfile& for_seat(std::size_t seat_index) const { return profiles_[seat_index % profiles_.size()]; }

 private:
  std::vector<VoiceProfile> profiles_;
};

}  // namespace werewolf::speech
