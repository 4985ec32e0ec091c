#include "werewolf/speech/voices.hpp"

#include <set>
#include <stdexcept>

namespace werewolf::speech {

void to_json(nlohmann::json& j, const VoiceProfile& v) {
  j = {{"voice_id", v.voice_id}, {"persona", v.persona}, {"reference_id", v.reference_id}};
}

void from_json(const nlohmann::json& j, VoiceProfile& v) {
  v.voice_id = j.at("voice_id").get<std::string>();
  v.persona = j.value("persona", v.voice_id);
  v.reference_id = j.value("reference_id", v.voice_id);
}

VoiceRegistry::VoiceRegistry(std::vector<VoiceProfile> profiles) : profiles_(std::move(profiles)) {
  if (profiles_.empty()) throw std::invalid_argument("voice registry needs at least one profile");
  std::set<std::string> ids;
  for (const auto& p : profiles_) {
    if (p.voice_id.empty()) throw std::invalid_argument("voice id must not be empty");
    if (!ids.insert(p.voice_id).second) throw std::invalid_argument("duplicate voice id: " + p.voice_id);
  }
}

VoiceRegistry VoiceRegistry::builtin() {
  std::vector<VoiceProfile> v;
  for (const char* id : {"alto", "baritone", "bass", "mezzo", "soprano", "tenor", "contralto", "treble"}) {
    std::string persona = id;
    persona[0] = static_cast<char>(persona[0] - 'a' + 'A');
    v.push_back({id, persona, std::string("ref-") + id});
  }
  return VoiceRegistry(std::move(v));
}

VoiceRegistry VoiceRegistry::from_json(const nlohmann::json& j) {
  return VoiceRegistry(j.get<std::vector<VoiceProfile>>());
}

const VoiceProfile* VoiceRegistry::find(const std::string& voice_id) const {
  for (const auto& p : profiles_) {
    if (p.voice_id == voice_id) return &p;
  }
  return nullptr;
}

const VoiceProfile& VoiceRegistry::at(const std::string& voice_id) const {
  if (const auto* p = find(voice_id)) return *p;
  throw std::invalid_argument("unknown voice id: " + voice_id);
}

}  // namespace werewolf::speech
