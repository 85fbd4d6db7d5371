#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sipsim {

enum class Band { Ku, Ka };
enum class Steering { MSA, ESA, Hybrid };

// COTS user terminal datasheet values.
struct TerminalPreset {
    std::string name;
    Band band = Band::Ka;
    double eirp_dbw = 0.0;
    std::optional<double> g_over_t_dbk;
    Steering steering = Steering::MSA;
    double mass_kg = 0.0;
};

// Mission-side payload used in the link budget (EIRP and G/T only).
struct PayloadPreset {
    std::string name;
    double eirp_dbw = 0.0;
    double g_over_t_dbk = 0.0;

    bool operator==(const PayloadPreset&) const = default;
};

// Provider satellite side of both directions.
struct ProviderLinkPreset {
    std::string name;
    double downlink_eirp_dbw = 0.0;
    double downlink_frequency_hz = 0.0;
    double downlink_bandwidth_hz = 0.0;
    double uplink_g_over_t_dbk = 0.0;
    double uplink_frequency_hz = 0.0;
    double uplink_bandwidth_hz = 0.0;

    bool operator==(const ProviderLinkPreset&) const = default;
};

class TerminalCatalog {
public:
    // terminals.csv holds datasheet terminals; link_endpoints.csv holds the
    // payload and provider rows used for link budgets.
    static TerminalCatalog load(const std::filesystem::path& terminals_csv,
                                const std::filesystem::path& endpoints_csv);
    static TerminalCatalog parse(std::string_view terminals_csv, std::string_view endpoints_csv);

    const std::vector<TerminalPreset>& terminals() const noexcept { return terminals_; }
    const std::vector<PayloadPreset>& payloads() const noexcept { return payloads_; }
    const std::vector<ProviderLinkPreset>& providers() const noexcept { return providers_; }

    // Case-insensitive. Link-budget payload rows take precedence over
    // datasheet terminals; datasheet rows without G/T cannot be resolved.
    std::optional<PayloadPreset> find_payload(std::string_view name) const;
    std::optional<ProviderLinkPreset> find_provider(std::string_view name) const;
    std::vector<std::string> payload_names() const;

private:
    std::vector<TerminalPreset> terminals_;
    std::vector<PayloadPreset> payloads_;
    std::vector<ProviderLinkPreset> providers_;
};

std::string_view to_string(Band band);
std::string_view to_string(Steering steering);

}  // namespace sipsim
