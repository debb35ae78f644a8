from apkwarden.domain.entities.manifest import Component, ManifestFlags, ManifestModel
from apkwarden.domain.enums import ComponentKind, LaunchMode
from apkwarden.domain.enums.severity import Severity
from apkwarden.services.rules import evaluate_manifest_rules


def _ids(findings):
    return [f.rule_id for f in findings]


def test_absent_flags_use_platform_defaults():
    findings = evaluate_manifest_rules(ManifestModel(package="com.example"))
    assert _ids(findings) == ["MANIFEST-BACKUP", "MANIFEST-CLEARTEXT"]
    assert "not set" in findings[0].evidence
    assert str(findings[0].location) == "AndroidManifest.xml:manifest/application"


def test_explicit_flags():
    safe = ManifestFlags(allow_backup=False, debuggable=False, uses_cleartext_traffic=False)
    assert evaluate_manifest_rules(ManifestModel("com.example", flags=safe)) == []

    weak = ManifestFlags(allow_backup=True, debuggable=True, uses_cleartext_traffic=True)
    findings = evaluate_manifest_rules(ManifestModel("com.example", flags=weak))
    assert _ids(findings) == ["MANIFEST-BACKUP", "MANIFEST-CLEARTEXT", "MANIFEST-DEBUG"]
    assert findings[2].severity == Severity.High
    assert findings[0].evidence == "android:allowBackup=true"


def test_network_security_config_covers_cleartext():
    flags = ManifestFlags(allow_backup=False, network_security_config="@xml/network")
    assert evaluate_manifest_rules(ManifestModel("com.example", flags=flags)) == []


def test_components():
    flags = ManifestFlags(allow_backup=False, uses_cleartext_traffic=False)
    m = ManifestModel(
        "com.example",
        flags=flags,
        components=(
            Component(ComponentKind.Activity, "com.example.Main", launch_mode=LaunchMode.singleTop),
            Component(
                ComponentKind.Activity, "com.example.Share", launch_mode=LaunchMode.singleInstance
            ),
            Component(ComponentKind.Receiver, "com.example.Boot", intent_filters=1, tag="receiver"),
            Component(ComponentKind.Service, "com.example.Sync", exported=True, permission="p"),
            Component(ComponentKind.Provider, "com.example.Data", exported=False, intent_filters=1),
        ),
    )
    findings = evaluate_manifest_rules(m)
    assert [(f.rule_id, f.location.manifest_path) for f in findings] == [
        (
            "MANIFEST-LAUNCHMODE",
            "manifest/application/activity[@name=com.example.Share]",
        ),
        (
            "MANIFEST-UNPROTECTED",
            "manifest/application/receiver[@name=com.example.Boot]",
        ),
    ]
    assert "intent filter" in findings[1].evidence

    guarded = ManifestModel(
        "com.example",
        flags=flags,
        components=m.components,
        application_permission="com.example.GUARD",
    )
    assert _ids(evaluate_manifest_rules(guarded)) == ["MANIFEST-LAUNCHMODE"]


def test_dangerous_permissions():
    m = ManifestModel(
        "com.example",
        flags=ManifestFlags(allow_backup=False, uses_cleartext_traffic=False),
        permissions=(
            "android.permission.INTERNET",
            "android.permission.READ_CONTACTS",
            "android.permission.CAMERA",
        ),
    )
    findings = evaluate_manifest_rules(m)
    assert [f.evidence for f in findings] == [
        "requests android.permission.CAMERA",
        "requests android.permission.READ_CONTACTS",
    ]
    assert {f.severity for f in findings} == {Severity.Info}
