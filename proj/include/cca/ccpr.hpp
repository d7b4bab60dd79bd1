#ifndef CCA_CCPR_HPP
#define CCA_CCPR_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cca::ccpr {

enum class Standard { DvbT, DvbT2 };
enum class Modulation { QPSK, QAM16, QAM64, G2, G8 };
enum class CodeRate { R1_2, R3_5, R2_3, R3_4, R5_6, R7_8 };
enum class Channel { Gaussian, Ricean, Rayleigh };
enum class Source { M1, M2, Reimers, ETSI, ITU, DTVP };

struct CcprKey {
    Standard standard;
    Modulation modulation;
    CodeRate code_rate;
    Channel channel;
    Source source;

    bool operator==(const CcprKey&) const = default;
};

struct Entry {
    Modulation modulation;
    CodeRate code_rate;
    Channel channel;
    Source source;
    double value_db;
};

/// T2 variants carry a fixed modulation and code rate.
inline CodeRate variant_code_rate(Modulation m) {
    switch (m) {
        case Modulation::G2: return CodeRate::R3_5;  // 16Ke 64QAM CR3/5 PP2
        case Modulation::G8: return CodeRate::R2_3;  // 32Ke 64QAM CR2/3 PP4
        default: throw std::invalid_argument("not a DVB-T2 variant");
    }
}

namespace detail {

// DVB-T protection ratios and required C/N, in dB. Columns per channel:
// Gaussian {M1, M2, Reimers, ETSI, ITU}, Ricean and Rayleigh
// {M1, Reimers, ETSI, ITU}. NaN marks cells with no published number.
constexpr double kAbsent = -1.0;

struct DvbtRow {
    Modulation mod;
    CodeRate cr;
    std::array<double, 5> gauss;   // M1 M2 Reim ETSI ITU
    std::array<double, 4> rice;    // M1 Reim ETSI ITU
    std::array<double, 4> rayleigh;
};

inline const std::array<DvbtRow, 15>& dvbt_rows() {
    using M = Modulation;
    using R = CodeRate;
    static const std::array<DvbtRow, 15> rows = {{
        {M::QPSK,  R::R1_2, {2.0, 2.5, 3.1, 3.5, 5.0},   {2.8, 3.6, 4.1, 6.0},    {4.1, 5.4, 5.9, 8.0}},
        {M::QPSK,  R::R2_3, {3.8, 3.5, 4.9, 5.3, 7.0},   {4.8, 5.7, 6.1, 8.0},    {7.1, 8.4, 9.6, 11.0}},
        {M::QPSK,  R::R3_4, {4.7, 5.0, 5.9, 6.3, kAbsent}, {5.9, 6.8, 7.2, kAbsent}, {9.1, 10.7, 12.4, kAbsent}},
        {M::QPSK,  R::R5_6, {5.8, 6.0, 6.9, 7.3, kAbsent}, {7.3, 8.0, 8.5, kAbsent}, {12.0, 13.1, 15.6, kAbsent}},
        {M::QPSK,  R::R7_8, {6.4, 7.0, 7.7, 7.9, kAbsent}, {8.0, 8.7, 9.2, kAbsent}, {13.9, 16.3, 17.5, kAbsent}},
        {M::QAM16, R::R1_2, {7.3, 8.0, 8.8, 9.3, 10.0},  {8.1, 9.6, 9.8, 11.0},   {9.4, 11.2, 11.8, 13.0}},
        {M::QAM16, R::R2_3, {9.6, 10.0, 11.1, 11.4, 13.0}, {10.6, 11.6, 12.1, 14.0}, {12.7, 14.2, 15.3, 16.0}},
        {M::QAM16, R::R3_4, {10.8, 11.0, 12.5, 12.6, 14.0}, {12.0, 13.0, 13.4, 15.0}, {14.7, 16.7, 18.1, 18.0}},
        {M::QAM16, R::R5_6, {12.1, 12.5, 13.5, 13.8, kAbsent}, {13.4, 14.4, 14.8, kAbsent}, {17.5, 19.3, 21.3, kAbsent}},
        {M::QAM16, R::R7_8, {12.8, 13.0, 13.9, 14.4, kAbsent}, {14.3, 15.0, 15.7, kAbsent}, {19.5, 22.8, 23.6, kAbsent}},
        {M::QAM64, R::R1_2, {11.5, 11.5, 14.4, 13.8, 16.0}, {12.4, 14.7, 14.3, 17.0}, {13.9, 16.0, 16.4, 19.0}},
        {M::QAM64, R::R2_3, {14.7, 15.0, 16.5, 16.7, 19.0}, {15.5, 17.1, 17.3, 20.0}, {17.4, 19.3, 20.3, 23.0}},
        {M::QAM64, R::R3_4, {16.2, 16.5, 18.0, 18.2, 20.0}, {17.3, 18.6, 18.9, 21.0}, {19.8, 21.7, 23.0, 25.0}},
        {M::QAM64, R::R5_6, {17.7, 18.5, 19.3, 19.4, kAbsent}, {18.9, 20.0, 20.4, kAbsent}, {22.5, 25.3, 26.2, kAbsent}},
        {M::QAM64, R::R7_8, {18.6, 19.5, 20.1, 20.2, kAbsent}, {19.9, 21.0, 21.3, kAbsent}, {24.7, 27.9, 28.6, kAbsent}},
    }};
    return rows;
}

struct T2Row {
    Modulation variant;
    std::array<double, 2> gauss;   // M1 DTVP
    std::array<double, 2> rice;
    std::array<double, 2> rayleigh;
};

inline const std::array<T2Row, 2>& dvbt2_rows() {
    static const std::array<T2Row, 2> rows = {{
        {Modulation::G2, {12.8, 14.8}, {13.3, 15.1}, {15.2, 16.9}},
        {Modulation::G8, {14.1, 15.7}, {14.7, 16.1}, {16.8, 17.9}},
    }};
    return rows;
}

}  // namespace detail

/// Immutable protection-ratio / minimum-C/N table.
class Table {
public:
    static const Table& instance() {
        static const Table t;
        return t;
    }

    /// Exact table value, or absent for cells with no published number
    /// and for combinations outside the table.
    std::optional<double> lookup(const CcprKey& key) const {
        CcprKey k = normalize(key);
        for (const auto& [ek, v] : entries_)
            if (ek == k)
                return v;
        return std::nullopt;
    }

    /// Entry with the minimal value for (standard, channel, source); ties
    /// break toward the lowest code rate, then the lowest modulation order.
    std::pair<CcprKey, double> most_robust_mode(Standard standard,
                                                Channel channel,
                                                Source source) const {
        const std::pair<CcprKey, double>* best = nullptr;
        for (const auto& e : entries_) {
            if (e.first.standard != standard || e.first.channel != channel ||
                e.first.source != source)
                continue;
            if (!best || e.second < best->second ||
                (e.second == best->second &&
                 std::pair(e.first.code_rate, e.first.modulation) <
                     std::pair(best->first.code_rate, best->first.modulation)))
                best = &e;
        }
        if (!best)
            throw std::out_of_range("no CCPR entries for requested triple");
        return *best;
    }

    const std::vector<std::pair<CcprKey, double>>& entries() const {
        return entries_;
    }

    /// Full table as CSV, header `standard,modulation,code_rate,channel,source,ccpr_db`.
    void export_csv(std::ostream& os) const;

private:
    Table() {
        using C = Channel;
        using S = Source;
        for (const auto& row : detail::dvbt_rows()) {
            add(row.mod, row.cr, C::Gaussian, S::M1, row.gauss[0]);
            add(row.mod, row.cr, C::Gaussian, S::M2, row.gauss[1]);
            add(row.mod, row.cr, C::Gaussian, S::Reimers, row.gauss[2]);
            add(row.mod, row.cr, C::Gaussian, S::ETSI, row.gauss[3]);
            add(row.mod, row.cr, C::Gaussian, S::ITU, row.gauss[4]);
            add(row.mod, row.cr, C::Ricean, S::M1, row.rice[0]);
            add(row.mod, row.cr, C::Ricean, S::Reimers, row.rice[1]);
            add(row.mod, row.cr, C::Ricean, S::ETSI, row.rice[2]);
            add(row.mod, row.cr, C::Ricean, S::ITU, row.rice[3]);
            add(row.mod, row.cr, C::Rayleigh, S::M1, row.rayleigh[0]);
            add(row.mod, row.cr, C::Rayleigh, S::Reimers, row.rayleigh[1]);
            add(row.mod, row.cr, C::Rayleigh, S::ETSI, row.rayleigh[2]);
            add(row.mod, row.cr, C::Rayleigh, S::ITU, row.rayleigh[3]);
        }
        for (const auto& row : detail::dvbt2_rows()) {
            CodeRate cr = variant_code_rate(row.variant);
            add_t2(row.variant, cr, C::Gaussian, S::M1, row.gauss[0]);
            add_t2(row.variant, cr, C::Gaussian, S::DTVP, row.gauss[1]);
            add_t2(row.variant, cr, C::Ricean, S::M1, row.rice[0]);
            add_t2(row.variant, cr, C::Ricean, S::DTVP, row.rice[1]);
            add_t2(row.variant, cr, C::Rayleigh, S::M1, row.rayleigh[0]);
            add_t2(row.variant, cr, C::Rayleigh, S::DTVP, row.rayleigh[1]);
        }
    }

    void add(Modulation m, CodeRate r, Channel c, Source s, double v) {
        if (v == detail::kAbsent)
            return;
        entries_.push_back({CcprKey{Standard::DvbT, m, r, c, s}, v});
    }
    void add_t2(Modulation m, CodeRate r, Channel c, Source s, double v) {
        entries_.push_back({CcprKey{Standard::DvbT2, m, r, c, s}, v});
    }

    static CcprKey normalize(CcprKey k) {
        if (k.standard == Standard::DvbT2 &&
            (k.modulation == Modulation::G2 || k.modulation == Modulation::G8))
            k.code_rate = variant_code_rate(k.modulation);
        return k;
    }

    std::vector<std::pair<CcprKey, double>> entries_;
};

inline std::string_view to_string(Standard s) {
    return s == Standard::DvbT ? "DVB-T" : "DVB-T2";
}
inline std::string_view to_string(Modulation m) {
    switch (m) {
        case Modulation::QPSK: return "QPSK";
        case Modulation::QAM16: return "16QAM";
        case Modulation::QAM64: return "64QAM";
        case Modulation::G2: return "G2";
        case Modulation::G8: return "G8";
    }
    return "?";
}
inline std::string_view to_string(CodeRate r) {
    switch (r) {
        case CodeRate::R1_2: return "1/2";
        case CodeRate::R3_5: return "3/5";
        case CodeRate::R2_3: return "2/3";
        case CodeRate::R3_4: return "3/4";
        case CodeRate::R5_6: return "5/6";
        case CodeRate::R7_8: return "7/8";
    }
    return "?";
}
inline std::string_view to_string(Channel c) {
    switch (c) {
        case Channel::Gaussian: return "Gaussian";
        case Channel::Ricean: return "Ricean";
        case Channel::Rayleigh: return "Rayleigh";
    }
    return "?";
}
inline std::string_view to_string(Source s) {
    switch (s) {
        case Source::M1: return "M1";
        case Source::M2: return "M2";
        case Source::Reimers: return "Reimers";
        case Source::ETSI: return "ETSI";
        case Source::ITU: return "ITU";
        case Source::DTVP: return "DTVP";
    }
    return "?";
}

template <class Enum>
Enum parse_enum(std::string_view text, std::initializer_list<Enum> values,
                const char* what) {
    for (Enum v : values)
        if (to_string(v) == text)
            return v;
    throw std::invalid_argument(std::string("unknown ") + what + ": " +
                                std::string(text));
}

inline Standard parse_standard(std::string_view s) {
    return parse_enum(s, {Standard::DvbT, Standard::DvbT2}, "standard");
}
inline Modulation parse_modulation(std::string_view s) {
    return parse_enum(s,
                      {Modulation::QPSK, Modulation::QAM16, Modulation::QAM64,
                       Modulation::G2, Modulation::G8},
                      "modulation");
}
inline CodeRate parse_code_rate(std::string_view s) {
    return parse_enum(s,
                      {CodeRate::R1_2, CodeRate::R3_5, CodeRate::R2_3,
                       CodeRate::R3_4, CodeRate::R5_6, CodeRate::R7_8},
                      "code rate");
}
inline Channel parse_channel(std::string_view s) {
    return parse_enum(s, {Channel::Gaussian, Channel::Ricean, Channel::Rayleigh},
                      "channel");
}
inline Source parse_source(std::string_view s) {
    return parse_enum(s,
                      {Source::M1, Source::M2, Source::Reimers, Source::ETSI,
                       Source::ITU, Source::DTVP},
                      "source");
}

inline void Table::export_csv(std::ostream& os) const {
    os << "standard,modulation,code_rate,channel,source,ccpr_db\n";
    for (const auto& [k, v] : entries_) {
        os << to_string(k.standard) << ',' << to_string(k.modulation) << ','
           << to_string(k.code_rate) << ',' << to_string(k.channel) << ','
           << to_string(k.source) << ',' << v << '\n';
    }
}

}  // namespace cca::ccpr

#endif
