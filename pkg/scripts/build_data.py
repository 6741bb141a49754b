#!/usr/bin/env python3
"""Rebuilds the embedded taxonomy and corpus data files in canonical form.

The nested literals below are the authoritative source for the built-in
TaxIdMA content; run this script after editing them to regenerate
src/taxidma/data/. Every definition and record is validated before it is
written, so a bad edit fails here instead of at load time.
"""

from __future__ import annotations

import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from taxidma.canonical import serialize_record, serialize_taxonomy, _dump  # noqa: E402
from taxidma.model import TaxonomySet, parse_taxonomy, validate_taxonomy  # noqa: E402
from taxidma.records import parse_record, validate_record  # noqa: E402

SET_VERSION = "taxidma-2022.1"
TAXONOMY_VERSION = "2022.1"
DETAIL_IDS = ("system-identities", "idms", "end-user-identities")

DATA_DIR = REPO / "src" / "taxidma" / "data"

_WORDS = {"idms": "IdMS", "osint": "OSINT", "dos": "DoS"}
_TITLES = {
    "end-user": "End-User",
    "end-user-design": "End-User Design",
    "interruptive-dos": "Interruptive (DoS)",
    "de-anonymization": "De-Anonymization",
    "state-sponsored": "State-Sponsored",
    "third-party": "Third-Party",
    "third-party-system": "Third-Party System",
    "osint-based": "OSINT-Based",
    "crypto-analysis": "Cryptoanalysis",
}


def title_for(slug: str) -> str:
    if slug in _TITLES:
        return _TITLES[slug]
    return " ".join(_WORDS.get(w, w.capitalize()) for w in slug.split("-"))


def value(entry) -> dict:
    """Expands the compact value notation: "slug", ("slug", [children]),
    or {"slug": ..., "citation": ...}."""
    if isinstance(entry, str):
        return {"slug": entry, "title": title_for(entry), "children": []}
    if isinstance(entry, tuple):
        slug, children = entry
        return {"slug": slug, "title": title_for(slug), "children": [value(c) for c in children]}
    out = {"slug": entry["slug"], "title": entry.get("title") or title_for(entry["slug"])}
    if "citation" in entry:
        out["citation"] = entry["citation"]
    out["children"] = [value(c) for c in entry.get("children", [])]
    return out


def facet(slug: str, values, *, kind: str = "enumerated", cardinality: str | None = None, title: str | None = None) -> dict:
    if cardinality is None:
        cardinality = "many" if kind == "enumerated" else "one"
    return {
        "slug": slug,
        "title": title or title_for(slug),
        "cardinality": cardinality,
        "kind": kind,
        "values": [value(v) for v in values],
    }


def category(slug: str, facets) -> dict:
    return {"slug": slug, "title": title_for(slug), "facets": facets}


def taxonomy(tax_id: str, title: str, categories) -> dict:
    return {"id": tax_id, "version": TAXONOMY_VERSION, "title": title, "categories": categories}


# --- shared building blocks -------------------------------------------------

LIFECYCLE = [
    {"slug": "reconnaissance", "citation": "cf. ATT&CK TA0043"},
    {"slug": "resource-development", "citation": "cf. ATT&CK TA0042"},
    {"slug": "initial-access", "citation": "cf. ATT&CK TA0001"},
    {"slug": "execution", "citation": "cf. ATT&CK TA0002"},
    {"slug": "persistence", "citation": "cf. ATT&CK TA0003"},
    {"slug": "privilege-escalation", "citation": "cf. ATT&CK TA0004"},
    {"slug": "defense-evasion", "citation": "cf. ATT&CK TA0005"},
    {"slug": "credential-access", "citation": "cf. ATT&CK TA0006"},
    {"slug": "discovery", "citation": "cf. ATT&CK TA0007"},
    {"slug": "lateral-movement", "citation": "cf. ATT&CK TA0008"},
    {"slug": "collection", "citation": "cf. ATT&CK TA0009"},
    {"slug": "command-and-control", "citation": "cf. ATT&CK TA0011"},
    {"slug": "exfiltration", "citation": "cf. ATT&CK TA0010"},
    {"slug": "impact", "citation": "cf. ATT&CK TA0040"},
]

SYSTEM_LEVEL = [
    "service",
    "network",
    ("system", ["cryptography", "hardware"]),
    ("application", [("server", ["database", "storage", "web", "email"]), "client"]),
    "user",
]

SCALE = ["low", "medium", "high"]

IDENTITY_CONTROL_FACETS = [
    facet("lifecycle", LIFECYCLE),
    facet("completeness", ["fully", "partly"]),
    facet("timeliness", ["temporary", "until-recovery"]),
    facet("directness", ["directly", "indirectly"]),
    facet("amount", ["single", "selected", "multiple"]),
]

ATTACK_VECTOR = [
    "protocol",
    "implementation",
    "architecture",
    "configuration",
    "policy",
    "cryptography",
    "end-user-design",
    "others",
]

# --- the four built-in taxonomies -------------------------------------------

BACKGROUND = taxonomy(
    "background",
    "Attack Background",
    [
        category(
            "attacker",
            [
                facet(
                    "type",
                    [
                        ("position", ["internal", "external"]),
                        ("amount", ["one", "few", "many"]),
                        (
                            "profile",
                            [
                                "individual",
                                "hacker-group",
                                "cybercriminals",
                                "state-sponsored",
                                "researcher",
                                "others",
                            ],
                        ),
                    ],
                ),
                facet(
                    "capabilities",
                    [
                        ("motivation", SCALE),
                        ("resources", SCALE),
                        ("knowledge", SCALE),
                        ("time", SCALE),
                    ],
                ),
            ],
        ),
        category(
            "target",
            [
                facet("type", ["person", "business", "government", "organization", "others"]),
                facet("sector", [], kind="free-text"),
                facet(
                    "identity",
                    [
                        ("internal", ["executive", "employee", "administrator", "contractor"]),
                        ("external", ["partner", "customer", "trusted-third-party", "stranger"]),
                    ],
                ),
            ],
        ),
        category(
            "identity",
            [
                facet("type", ["none", "end-user", "system", "privileged"]),
                facet("permissions", ["none", "restricted", "extended", "unrestricted"], kind="ordinal"),
                facet("authenticity", ["impostor", "compromised-account", "temporary", "none", "others"]),
            ],
        ),
        category(
            "attack",
            [
                facet(
                    "type",
                    [
                        ("physical", ["theft"]),
                        ("active", ["identity-theft", "interruptive-dos", "hacking", "malware"]),
                        ("passive", ["eavesdropping"]),
                        ("offline", ["cracking", "password-speculation", "crypto-analysis"]),
                        ("social-engineering", ["passive", "active", "physical"]),
                        "others",
                    ],
                ),
                facet("delivery", ["payload", "link", "response", "others"]),
                facet(
                    "results",
                    ["nuisance", "degradation", "disruption", "disabling", "theft", "disclosure", "others"],
                ),
                facet(
                    "impact",
                    [
                        "business-disruption",
                        "intellectual-property-loss",
                        "customer-information-loss",
                        "reputation-loss",
                        "financial-loss",
                        "others",
                    ],
                ),
            ],
        ),
    ],
)

SYSTEM_IDENTITIES = taxonomy(
    "system-identities",
    "System Identities",
    [
        category(
            "target",
            [
                facet("level", SYSTEM_LEVEL),
                facet("location", ["local", "external", "trusted-third-party"]),
            ],
        ),
        category("identity", IDENTITY_CONTROL_FACETS),
        category(
            "attack",
            [
                facet(
                    "category",
                    [
                        "identification",
                        "authentication",
                        "authorization",
                        "trust",
                        "governance",
                        "user-management",
                        "user-repository",
                        "physical",
                        "others",
                    ],
                ),
                facet("vector", ATTACK_VECTOR),
            ],
        ),
    ],
)

IDMS = taxonomy(
    "idms",
    "Identity Management Systems",
    [
        category(
            "target",
            [
                facet("level", SYSTEM_LEVEL),
                facet(
                    "location",
                    [
                        "identity-provider",
                        "service-provider",
                        "third-party-system",
                        "trusted-third-party",
                        "intermediate",
                        "end-user",
                        "transmission",
                    ],
                ),
            ],
        ),
        category("identity", IDENTITY_CONTROL_FACETS),
        category(
            "attack",
            [
                facet(
                    "category",
                    [
                        "identification",
                        "authentication",
                        "authorization",
                        "trust",
                        "governance",
                        "user-management",
                        "user-repository",
                        "information",
                    ],
                ),
                facet("vector", ATTACK_VECTOR),
            ],
        ),
    ],
)

END_USER_IDENTITIES = taxonomy(
    "end-user-identities",
    "End-User Identities",
    [
        category(
            "target",
            [
                facet("level", ["system", "application", "client", "user"]),
                facet(
                    "location",
                    [
                        "identity-provider",
                        "service-provider",
                        "trusted-third-party",
                        "third-party",
                        "intermediate",
                        "transmission",
                        "end-user",
                        "others",
                    ],
                ),
            ],
        ),
        category(
            "identity",
            [
                facet(
                    "type",
                    [
                        "credit-card",
                        "employment",
                        "tax",
                        "phone",
                        "bank",
                        "online-social-network",
                        "online-shopping",
                        "other-accounts",
                    ],
                ),
                facet("completeness", ["full", "partial"]),
                facet("timeliness", ["temporary", "until-recovery"]),
                facet("directness", ["directly", "indirectly"]),
                facet("amount", ["single", "selected", "multiple"]),
            ],
        ),
        category(
            "attack",
            [
                facet(
                    "type",
                    [
                        ("passive", ["underground-economy", "osint", "eavesdropping", "cracking"]),
                        "physical",
                        (
                            "social-engineering",
                            [{"slug": "phishing", "citation": "cf. CAPEC-98"}],
                        ),
                        (
                            "active",
                            [
                                ("malware", ["keylogger"]),
                                "hacking",
                                (
                                    "brute-force",
                                    [
                                        {"slug": "password-spraying", "citation": "cf. CAPEC-565"},
                                        {"slug": "credential-stuffing", "citation": "cf. CAPEC-600"},
                                        {"slug": "dictionary", "citation": "cf. CAPEC-16"},
                                        {"slug": "rainbow-table", "citation": "cf. CAPEC-55"},
                                        "osint-based",
                                        "hybrid",
                                    ],
                                ),
                            ],
                        ),
                        "others",
                    ],
                ),
                facet(
                    "pattern",
                    [
                        ("identity-theft", ["new-account-fraud", "account-takeover", "combined"]),
                        "identity-manipulation",
                        "de-anonymization",
                    ],
                ),
            ],
        ),
    ],
)

TAXONOMIES = [BACKGROUND, SYSTEM_IDENTITIES, IDMS, END_USER_IDENTITIES]


# --- corpus records ----------------------------------------------------------


def sel(facet_path: str, values=(), note: str | None = None, text: str | None = None) -> dict:
    out: dict = {"facet": facet_path, "values": list(values)}
    if note is not None:
        out["note"] = note
    if text is not None:
        out["text"] = text
    return out


def record(record_id: str, title: str, year: int, sources, background, stages, notes: str) -> dict:
    return {
        "record_id": record_id,
        "title": title,
        "year": year,
        "sources": list(sources),
        "background": {"taxonomy": "background", "selections": background},
        "stages": [
            {"taxonomy": taxonomy_id, "label": label, "selections": selections}
            for taxonomy_id, label, selections in stages
        ],
        "notes": notes,
    }


RECORDS = [
    record(
        "zoom-zsb-22004",
        "Zoom ZSB-22004 installer repair privilege escalation",
        2022,
        ["Zoom Security Bulletin ZSB-22004", "CVE-2022-22782"],
        [
            sel("identity/type", ["end-user"]),
            sel("identity/permissions", ["restricted"], note="described as limited"),
            sel(
                "identity/authenticity",
                ["compromised-account"],
                note="either the end-user itself or a compromised account",
            ),
            sel("attack/type", ["active"], note="possibly helped by social engineering"),
            sel("attack/delivery", ["payload", "others"], note="depends on the concrete follow-on attack"),
            sel("attack/results", ["others"], note="at least escalated privileges"),
        ],
        [
            (
                "system-identities",
                "privilege escalation on the end-user system",
                [
                    sel("target/level", ["application"]),
                    sel("target/location", ["local", "external"], note="consequences either internal or external"),
                    sel("identity/lifecycle", ["privilege-escalation"]),
                    sel("identity/directness", ["directly"]),
                    sel("identity/amount", ["single", "selected"]),
                    sel("attack/category", ["authorization"]),
                    sel("attack/vector", ["implementation"], note="Zoom client implementation"),
                ],
            )
        ],
        "Local privilege escalation vulnerability in the Zoom client installer repair "
        "operation, disclosed April 2022 with a CVSS score of 7.9. Attacker and target "
        "cannot be pinned down for a bare vulnerability; completeness and timeliness of a "
        "takeover depend on whether persistent access is established, and the wider impact "
        "varies with the follow-on attack.",
    ),
    record(
        "virustotal-2022",
        "VirusTotal scan-host compromise via exiftool",
        2022,
        ["CySource research disclosure on VirusTotal scan hosts", "CVE-2021-22204"],
        [
            sel("attacker/type", ["profile/researcher"], note="teams playing out of interest, mostly outsiders"),
            sel(
                "attacker/capabilities",
                ["knowledge/high"],
                note="beyond script kiddie: a specific CVE in mind and the skill to use it",
            ),
            sel("target/type", ["business"], note="a selected service hosted by Google"),
            sel("target/identity", ["external"]),
            sel("identity/type", ["end-user"], note="privileged access gained"),
            sel("identity/permissions", ["extended"], note="almost unrestricted"),
            sel("identity/authenticity", ["compromised-account"]),
            sel("attack/type", ["active/hacking"]),
            sel("attack/delivery", ["payload"], note="inserted into the file metadata"),
            sel(
                "attack/results",
                ["disclosure"],
                note="several servers compromised; sensitive tokens and certificates leaked",
            ),
        ],
        [
            (
                "system-identities",
                "reverse shells on the scan hosts",
                [
                    sel("target/level", ["system"], note="reached via applications"),
                    sel("target/location", ["external"]),
                    sel(
                        "identity/lifecycle",
                        ["initial-access", "privilege-escalation"],
                        note="initial access was mostly also the privilege escalation",
                    ),
                    sel("identity/completeness", ["fully"]),
                    sel("identity/timeliness", ["until-recovery"]),
                    sel("identity/directness", ["indirectly"], note="through the web application"),
                    sel("identity/amount", ["multiple"]),
                    sel(
                        "attack/category",
                        ["others"],
                        note="mix of implementation, update policy, and configuration weaknesses",
                    ),
                    sel(
                        "attack/vector",
                        ["implementation"],
                        note="exiftool implementation; update policy and configuration contributed",
                    ),
                ],
            )
        ],
        "Researchers uploaded a file whose metadata carried a payload; scan hosts running "
        "exiftool executed it, returning reverse shells from more than 50 internal hosts "
        "with high privileges and exposing tokens, certificates, and other critical "
        "information. The impact may be press coverage for the researchers as well as the "
        "service.",
    ),
    record(
        "solarwinds-fireeye-2020",
        "SolarWinds Orion supply-chain compromise at FireEye",
        2020,
        [
            "FireEye incident disclosure, December 2020",
            "CISA guidance on the SolarWinds Orion compromise",
        ],
        [
            sel(
                "attacker/capabilities",
                ["motivation/high", "resources/high", "knowledge/high", "time/high"],
                note="high degree of capabilities across the board",
            ),
            sel("target/type", ["business", "government", "organization"]),
            sel("target/identity", ["external"]),
            sel("identity/type", ["end-user", "privileged"], note="ranging from end-user to privileged"),
            sel(
                "identity/authenticity",
                ["compromised-account"],
                note="as far as understood, with the respective permissions",
            ),
            sel("attack/type", ["active"]),
            sel("attack/delivery", ["payload"], note="malicious code in the Orion software update"),
            sel("attack/results", ["others"], note="compromised software and networks"),
        ],
        [
            (
                "idms",
                "takeover at the identity provider",
                [
                    sel("target/level", ["system", "network"]),
                    sel("target/location", ["identity-provider"]),
                    sel("identity/timeliness", ["until-recovery"]),
                    sel("identity/directness", ["directly"]),
                    sel("identity/amount", ["selected"]),
                    sel(
                        "attack/category",
                        ["authentication"],
                        note="new device registration against multi-factor authentication",
                    ),
                    sel("attack/vector", ["others"], note="supply-chain attack through the Orion software update"),
                ],
            )
        ],
        "A tampered Orion update installed a backdoor that was used to collect domain "
        "credentials, abuse token signature certificates for cloud mailboxes, and finally "
        "target red-team tools. The first hint was a severity-zero alert for a newly "
        "enrolled second phone on a user account, an attempt to bypass multi-factor "
        "authentication. The attacker likely worked in a group; the takeover happened in a "
        "later lifecycle stage, and the full impact is still not known.",
    ),
    record(
        "nvidia-2022",
        "NVIDIA internal systems compromise",
        2022,
        ["Public reporting on the February 2022 NVIDIA incident"],
        [
            sel("attacker/type", ["profile/hacker-group"], note="LAPSUS$"),
            sel("target/type", ["business"], note="large enterprises"),
            sel("target/identity", ["external"]),
            sel(
                "attack/results",
                ["disclosure"],
                note="at least password hashes and code signing certificates leaked",
            ),
        ],
        [
            (
                "idms",
                "identity provider involvement",
                [
                    sel("target/location", ["identity-provider"]),
                    sel("identity/amount", ["multiple"], note="accounts of employees"),
                    sel("identity/completeness", ["fully"]),
                    sel("identity/timeliness", ["until-recovery"]),
                    sel("attack/category", ["user-management"], note="among others"),
                ],
            )
        ],
        "LAPSUS$ claimed responsibility after an employee account was compromised; password "
        "hashes and code signing certificates were leaked, and the company reportedly tried "
        "to hack back and ransom the machines. The group preannounces attacks and probably "
        "used several kinds of identities with varying permissions and authenticity; hacking "
        "and social engineering might have been involved, but delivery, results, and impact "
        "are not fully visible. Further categorization is not possible due to the limited "
        "information.",
    ),
    record(
        "arcare-2022",
        "ARcare health data breach",
        2022,
        ["ARcare data security incident notice, 2022"],
        [
            sel("target/type", ["business"], note="US healthcare provider ARcare"),
            sel("target/sector", text="healthcare"),
            sel("identity/authenticity", ["compromised-account", "temporary"]),
            sel("attack/type", ["active"]),
            sel("attack/results", ["others"], note="malware infection and data loss"),
            sel(
                "attack/impact",
                ["business-disruption"],
                note="may include identity theft for the affected individuals",
            ),
        ],
        [
            (
                "idms",
                "customer data access",
                [
                    sel("target/level", ["network", "system"]),
                    sel("target/location", ["identity-provider"]),
                    sel("identity/lifecycle", ["credential-access", "exfiltration"]),
                    sel("identity/amount", ["multiple"]),
                    sel("identity/completeness", ["fully"]),
                    sel("identity/timeliness", ["until-recovery"], note="access over a five-week period"),
                    sel("attack/category", ["user-management"]),
                ],
            )
        ],
        "A malware infection gave the attacker access to the healthcare provider's network "
        "over a five-week period, affecting 345,353 individuals; potentially exposed data "
        "ranged from social security numbers to health information. The attacker identity is "
        "probably external, the gained identity was likely a system or privileged one with "
        "enough permissions, and it stays unclear which vector enabled the attack. Both "
        "system identities and the IdMS could be regarded; this record concentrates on the "
        "customer data.",
    ),
    record(
        "celebgate-2014",
        "Celebgate iCloud and Google account phishing",
        2014,
        ["Public reporting and court records on the 2014 celebrity photo leaks"],
        [
            sel("attacker/type", ["amount/one", "profile/individual"]),
            sel(
                "attacker/capabilities",
                ["motivation/high", "time/high"],
                note="time to write phishing mails and guess security questions; motivated to steal private media",
            ),
            sel("identity/type", ["end-user"], note="with the users' permissions"),
            sel("identity/authenticity", ["impostor"], note="posed as the service provider"),
            sel("attack/type", ["social-engineering"], note="partly brute-force based on OSINT"),
            sel("attack/delivery", ["link"]),
            sel("attack/results", ["theft"], note="private photos and videos"),
            sel(
                "attack/impact",
                ["others"],
                note="publication of private photos (connection not established)",
            ),
        ],
        [
            (
                "end-user-identities",
                "account takeover of celebrity accounts",
                [
                    sel("target/level", ["user"]),
                    sel("target/location", ["identity-provider"], note="data stored in the providers' backups"),
                    sel("identity/type", ["other-accounts"], note="Apple iCloud and Google accounts"),
                    sel("identity/completeness", ["full"]),
                    sel("identity/timeliness", ["until-recovery"]),
                    sel("identity/directness", ["directly"]),
                    sel("identity/amount", ["selected"]),
                    sel(
                        "attack/type",
                        ["social-engineering/phishing", "active/brute-force/osint-based"],
                        note="OSINT-based guessing succeeded for some accounts",
                    ),
                    sel("attack/pattern", ["identity-theft/account-takeover"]),
                ],
            )
        ],
        "One attacker phished at least 50 iCloud and 72 Google accounts in 2014, partly "
        "exploiting fallback security questions with guessable answers, and in some cases "
        "downloaded entire backups with a dedicated tool; private photos and videos of "
        "mainly female celebrities were stolen. A connection to the later publication of "
        "the photos was not established.",
    ),
    record(
        "spotify-2021",
        "Spotify credential stuffing via exposed database",
        2021,
        ["Bob Diachenko disclosure, February 2021"],
        [
            sel(
                "attacker/capabilities",
                ["knowledge/medium"],
                note="able to operate an Elasticsearch database but not to secure it",
            ),
            sel("target/type", ["person"]),
            sel("identity/type", ["end-user"]),
            sel("identity/permissions", ["restricted"], note="limited permissions"),
            sel("identity/authenticity", ["compromised-account"]),
            sel("attack/type", ["active"]),
            sel("attack/delivery", ["response"]),
            sel("attack/results", ["theft"], note="credentials of valid users"),
        ],
        [
            (
                "end-user-identities",
                "credential stuffing against user accounts",
                [
                    sel("target/level", ["user"]),
                    sel("target/location", ["identity-provider"]),
                    sel("identity/type", ["other-accounts"], note="online streaming accounts"),
                    sel("identity/completeness", ["full"]),
                    sel(
                        "identity/timeliness",
                        ["until-recovery"],
                        note="until password change, possibly with multi-factor authentication enabled",
                    ),
                    sel("identity/directness", ["directly"]),
                    sel("identity/amount", ["multiple"]),
                    sel("attack/type", ["active/brute-force/credential-stuffing"]),
                    sel("attack/pattern", ["identity-theft/account-takeover"]),
                ],
            )
        ],
        "A second credential stuffing wave against an estimated hundred thousand Spotify "
        "accounts, uncovered in February 2021. A misconfigured, openly reachable "
        "Elasticsearch database holding hundreds of millions of reused credential records, "
        "owned by malicious third parties, fed the attack. The motivation might be money; "
        "the stolen credentials might also be replayed against third parties, and the "
        "impact may range from nuisance to financial loss.",
    ),
    record(
        "flytrap-2021",
        "FlyTrap Android session hijacking trojan",
        2021,
        ["Zimperium zLabs analysis of the FlyTrap Android trojan, 2021"],
        [
            sel("target/type", ["person"], note="end-users"),
            sel("identity/type", ["end-user"]),
            sel("identity/permissions", ["restricted"]),
            sel(
                "identity/authenticity",
                ["impostor", "compromised-account"],
                note="impostor through the app; compromised accounts for onward social engineering",
            ),
            sel("attack/type", ["active", "social-engineering"]),
            sel("attack/delivery", ["link", "others"], note="through the trojanized app"),
            sel("attack/results", ["theft"], note="overtaken accounts and sessions held on the C2 server"),
        ],
        [
            (
                "end-user-identities",
                "Facebook session hijacking via trojanized apps",
                [
                    sel("target/level", ["application"]),
                    sel(
                        "target/location",
                        ["identity-provider"],
                        note="data gained via the targeted users resp. third parties",
                    ),
                    sel("identity/type", ["online-social-network"], note="Facebook accounts"),
                    sel("identity/completeness", ["partial"]),
                    sel("identity/timeliness", ["temporary"]),
                    sel("identity/directness", ["directly"]),
                    sel("identity/amount", ["multiple"]),
                    sel("attack/type", ["active/malware"]),
                    sel("attack/pattern", ["identity-theft/account-takeover"]),
                ],
            )
        ],
        "Nine trojanized apps spread through Google Play and third-party marketplaces to "
        "more than 10,000 victims, luring them to log in with Facebook to vote or collect "
        "coupon codes. Hijacked sessions, Facebook IDs, locations, email addresses, and "
        "cookies were stored on a command-and-control server, and compromised accounts "
        "spread the trojan further through personal messages. The exact attacker type is "
        "not known, and the impact might increase if a vulnerability of the C2 server were "
        "exploited.",
    ),
]

# Non-golden variant: the same supply-chain incident broken into its four
# phases, one stage per phase. The golden corpus keeps the single-stage form.
SOLARWINDS_MULTISTAGE = record(
    "solarwinds-fireeye-2020-multistage",
    "SolarWinds Orion supply-chain compromise at FireEye (per-phase variant)",
    2020,
    [
        "FireEye incident disclosure, December 2020",
        "CISA guidance on the SolarWinds Orion compromise",
    ],
    [
        sel(
            "attacker/capabilities",
            ["motivation/high", "resources/high", "knowledge/high", "time/high"],
            note="high degree of capabilities across the board",
        ),
        sel("target/type", ["business", "government", "organization"]),
        sel("target/identity", ["external"]),
        sel("identity/type", ["end-user", "privileged"], note="ranging from end-user to privileged"),
        sel("identity/authenticity", ["compromised-account"]),
        sel("attack/type", ["active"]),
        sel("attack/delivery", ["payload"], note="malicious code in the Orion software update"),
        sel("attack/results", ["others"], note="compromised software and networks"),
    ],
    [
        (
            "system-identities",
            "backdoor installed through the Orion update",
            [
                sel("target/level", ["application"]),
                sel("target/location", ["local"]),
                sel("identity/lifecycle", ["initial-access", "persistence"]),
                sel("identity/directness", ["indirectly"]),
                sel("identity/amount", ["single"]),
                sel("attack/category", ["trust"]),
                sel("attack/vector", ["others"], note="supply-chain attack"),
            ],
        ),
        (
            "system-identities",
            "domain credential collection",
            [
                sel("target/level", ["network"]),
                sel("identity/lifecycle", ["credential-access"]),
                sel("identity/directness", ["directly"]),
                sel("identity/amount", ["multiple"]),
                sel("attack/category", ["authentication"]),
            ],
        ),
        (
            "idms",
            "token signature certificates for cloud mailboxes",
            [
                sel("target/level", ["system"]),
                sel("target/location", ["identity-provider"]),
                sel("identity/lifecycle", ["lateral-movement", "collection"]),
                sel("identity/timeliness", ["until-recovery"]),
                sel("identity/amount", ["selected"]),
                sel("attack/category", ["authentication"]),
                sel("attack/vector", ["others"], note="abused token signature certificates"),
            ],
        ),
        (
            "system-identities",
            "red-team tool theft",
            [
                sel("target/level", ["application"]),
                sel("identity/lifecycle", ["collection", "exfiltration"]),
                sel("attack/category", ["others"], note="theft of red-team tooling"),
            ],
        ),
    ],
    "Per-phase encoding of the incident for illustration; the golden corpus entry "
    "collapses the chain into one identity-management stage.",
)


def main() -> int:
    taxonomies = {}
    for doc in TAXONOMIES:
        parsed = parse_taxonomy(_dump(doc))
        report = validate_taxonomy(parsed)
        if not report.clean:
            for defect in report.defects:
                print(f"{doc['id']}: {defect.severity} {defect.rule_id} {defect.location} {defect.message}")
            return 1
        taxonomies[parsed.id] = parsed

    tset = TaxonomySet(
        set_version=SET_VERSION,
        taxonomies=tuple(taxonomies[i] for i in ("background",) + DETAIL_IDS),
        detail_ids=DETAIL_IDS,
    )

    tax_dir = DATA_DIR / "taxonomies"
    corpus_dir = DATA_DIR / "corpus"
    extra_dir = DATA_DIR / "extra"
    for directory in (tax_dir, corpus_dir, extra_dir):
        directory.mkdir(parents=True, exist_ok=True)

    for tax_id, parsed in taxonomies.items():
        (tax_dir / f"{tax_id}.json").write_text(serialize_taxonomy(parsed), encoding="utf-8")
        print(f"wrote taxonomies/{tax_id}.json")

    record_ids = []
    for doc in RECORDS + [SOLARWINDS_MULTISTAGE]:
        parsed = parse_record(_dump(doc))
        report = validate_record(parsed, tset)
        if not report.ok:
            for defect in report.errors:
                print(f"{parsed.record_id}: {defect.rule_id} {defect.location} {defect.message}")
            return 1
        golden = doc is not SOLARWINDS_MULTISTAGE
        target = corpus_dir if golden else extra_dir
        (target / f"{parsed.record_id}.json").write_text(serialize_record(parsed), encoding="utf-8")
        print(f"wrote {target.name}/{parsed.record_id}.json ({len(report.warnings)} warnings)")
        if golden:
            record_ids.append(parsed.record_id)

    index = {"set_version": SET_VERSION, "record_ids": sorted(record_ids)}
    (corpus_dir / "index.json").write_text(_dump(index), encoding="utf-8")
    print("wrote corpus/index.json")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
