import json
import random
import shutil

import pytest

from analyzer.pipeline import analyze_app
from apk.app_model import AppModel, load_app
from apk.layout import classify_element, load_widget_table, parse_layout
from apk.manifest import parse_manifest, resolve_class_name
from apk.resources import parse_public_xml, parse_xml
from apk.smali import (
    ConstInt,
    Invoke,
    MethodRef,
    Other,
    descriptor_params,
    parse_instruction,
    parse_registers,
    parse_smali,
)
from core.errors import AppLayoutInvalid, ClaimCheckError, ConfigInvalid, ManifestInvalid, ParseError
from core.vocabulary import WidgetKind
from tests.synthetic import AppBuilder, Widget, smali_class

NS = 'xmlns:android="http://schemas.android.com/apk/res/android"'


# === 매니페스트 ===

def test_manifest_resolves_short_names():
    info = parse_manifest(f"""
        <manifest {NS} package="no.nrk.yr">
          <application>
            <activity android:name=".MainActivity"/>
            <activity android:name="SettingsActivity"/>
            <activity android:name="com.lib.Other"/>
            <activity android:name="bad name!"/>
            <activity/>
          </application>
        </manifest>""")
    assert info.package_name == "no.nrk.yr"
    assert info.activities == {
        "no.nrk.yr.MainActivity", "no.nrk.yr.SettingsActivity", "com.lib.Other",
    }
    assert info.skipped_activities == ("bad name!", "")


def test_resolve_class_name():
    assert resolve_class_name(".a.B", "p") == "p.a.B"
    assert resolve_class_name("B", "p") == "p.B"
    assert resolve_class_name("x.B", "p") == "x.B"


@pytest.mark.parametrize("xml, error", [
    ("<manifest", ParseError),
    ("<application/>", ManifestInvalid),
    (f"<manifest {NS}/>", ManifestInvalid),
])
def test_bad_manifest(xml, error):
    with pytest.raises(error):
        parse_manifest(xml)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as exc:
        parse_xml("<a>\n<b></a>", path="res/layout/x.xml")
    assert exc.value.line == 2
    assert exc.value.path == "res/layout/x.xml"


def test_external_entities_are_not_resolved(tmp_path):
    secret = tmp_path / "secret.txt"
    secret.write_text("leaked", encoding="utf-8")
    xml = (
        f'<?xml version="1.0"?><!DOCTYPE r [<!ENTITY x SYSTEM "file://{secret}">]>'
        "<r>&x;</r>"
    )
    try:
        root = parse_xml(xml)
    except ParseError:
        return
    assert "leaked" not in "".join(root.itertext())


# === 레이아웃 ===

@pytest.mark.parametrize("name, kind", [
    ("Button", WidgetKind.BUTTON),
    ("ImageButton", WidgetKind.BUTTON),
    ("com.google.android.material.button.MaterialButton", WidgetKind.BUTTON),
    ("RadioButton", WidgetKind.CHECKBOX_OR_SPINNER),
    ("Spinner", WidgetKind.CHECKBOX_OR_SPINNER),
    ("EditText", WidgetKind.TEXTFIELD),
    ("androidx.appcompat.widget.SearchView", WidgetKind.TEXTFIELD),
    ("WebView", WidgetKind.VIEW),
    ("LinearLayout", WidgetKind.OTHER),
    ("ProgressBar", WidgetKind.OTHER),
])
def test_classify_element(name, kind):
    assert classify_element(name) is kind


def test_parse_layout_reads_ids_and_handlers():
    widgets = parse_layout(f"""
        <LinearLayout {NS}>
          <Button android:id="@+id/ok" android:onClick=" onOk "/>
          <view class="android.widget.EditText" android:id="@id/name"/>
          <ListView android:id="@android:id/list"/>
        </LinearLayout>""", "res/layout/form.xml")
    assert [(w.element_name, w.widget_kind, w.resource_id_name, w.onclick_handler) for w in widgets] == [
        ("LinearLayout", WidgetKind.OTHER, None, None),
        ("Button", WidgetKind.BUTTON, "ok", "onOk"),
        ("android.widget.EditText", WidgetKind.TEXTFIELD, "name", None),
        ("ListView", WidgetKind.VIEW, None, None),
    ]
    assert widgets[1].layout_name == "form"
    assert widgets[1].label == "ok"
    assert widgets[0].label == "LinearLayout"
    assert [w.position for w in widgets] == [0, 1, 2, 3]
    assert widgets[3].key == "res/layout/form.xml:ListView#3"
    assert widgets[1].key == "res/layout/form.xml:ok"


def test_widget_table_overrides(tmp_path):
    path = tmp_path / "widgets.json"
    path.write_text(json.dumps({"com.shop.BuyView": "Button"}), encoding="utf-8")
    table = load_widget_table(path)
    assert classify_element("com.shop.BuyView", table) is WidgetKind.BUTTON
    assert classify_element("Spinner", table) is WidgetKind.CHECKBOX_OR_SPINNER

    path.write_text(json.dumps({"X": "Slider"}), encoding="utf-8")
    with pytest.raises(ConfigInvalid, match="Slider"):
        load_widget_table(path)


def test_public_xml():
    table = parse_public_xml("""
        <resources>
          <public type="id" name="ok" id="0x7f0a0001"/>
          <public type="layout" name="main" id="0x7f0d0001"/>
          <public type="id" name="broken" id="zz"/>
        </resources>""")
    assert table == {"id": {"ok": 0x7F0A0001}, "layout": {"main": 0x7F0D0001}}


# === smali ===

def test_parse_instruction_kinds():
    ins = parse_instruction(
        "invoke-virtual {v0, v1, v2}, Lcom/google/firebase/analytics/FirebaseAnalytics;"
        "->logEvent(Ljava/lang/String;Landroid/os/Bundle;)V"
    )
    assert isinstance(ins, Invoke)
    assert ins.target == MethodRef(
        "com.google.firebase.analytics.FirebaseAnalytics", "logEvent",
        "(Ljava/lang/String;Landroid/os/Bundle;)V",
    )
    assert ins.receiver == "v0"
    assert ins.call_args == ("v1", "v2")

    assert parse_instruction("const/4 v2, 0x1") == ConstInt("v2", 1, "const/4")
    assert parse_instruction("const v0, 0x7f0a0001") == ConstInt("v0", 0x7F0A0001, "const")
    assert parse_instruction("const/16 v1, -0x10") == ConstInt("v1", -16, "const/16")

    other = parse_instruction("move-result-object v0")
    assert isinstance(other, Other)
    assert other.opcode == "move-result-object"
    assert other.operands == ["v0"]
    assert isinstance(parse_instruction("invoke-virtual {v0}, garbage"), Other)


def test_registers_and_descriptors():
    assert parse_registers("v0 .. v3") == ("v0", "v1", "v2", "v3")
    assert parse_registers("p0, v1") == ("p0", "v1")
    assert parse_registers("") == ()
    assert descriptor_params("(Ljava/lang/String;IJ[I)V") == ["Ljava/lang/String;", "I", "J", "[I"]
    assert str(MethodRef.parse("a.B->c(I)V")) == "a.B->c(I)V"
    with pytest.raises(ValueError):
        MethodRef.parse("no arrow")


def test_parse_smali_class():
    text = smali_class(
        "com.example.Foo",
        super_class="android.app.Activity",
        interfaces=["android.view.View$OnClickListener"],
        methods=[
            "\n".join([
                ".method public onClick(Landroid/view/View;)V",
                "    .locals 1",
                "    .annotation system Ldalvik/annotation/Signature;",
                "        value = { \"x\" }",
                "    .end annotation",
                "    :label",
                "    const/4 v0, 0x0",
                "    return-void",
                ".end method",
            ]),
            ".method static helper(JI)V\n    return-void\n.end method",
        ],
    )
    cls = parse_smali(text, "smali/com/example/Foo.smali")
    assert cls.name == "com.example.Foo"
    assert cls.super_class == "android.app.Activity"
    assert cls.interfaces == ("android.view.View$OnClickListener",)
    assert [m.name for m in cls.methods] == ["onClick", "helper"]

    on_click = cls.method("onClick", "(Landroid/view/View;)V")
    assert on_click.instructions == (ConstInt("v0", 0, "const/4"), Other("return-void"))
    assert on_click.param_registers() == [("p0", "Lcom/example/Foo;"), ("p1", "Landroid/view/View;")]

    helper = cls.find_methods("helper")[0]
    assert helper.is_static
    assert helper.param_registers() == [("p0", "J"), ("p2", "I")]


def test_smali_without_class_header():
    with pytest.raises(ParseError):
        parse_smali(".method public f()V\n.end method\n")


# === AppModel ===

def test_load_yr_app(yr_app):
    assert yr_app.name == "yr"
    assert yr_app.activities == {"no.nrk.yr.MainActivity", "no.nrk.yr.SettingsActivity"}
    assert yr_app.layout_files == ["res/layout/activity_main.xml", "res/layout/activity_settings.xml"]
    assert len(yr_app.classes) == 5
    assert yr_app.warnings == ()

    search = yr_app.widget_for_resource(yr_app.resource_ids["search"])
    assert search.widget_kind is WidgetKind.TEXTFIELD
    assert yr_app.layout_ids["activity_main"] == 0x7F0D0001


def test_hosting_activity_and_supertypes(yr_app):
    assert yr_app.hosting_activity("no.nrk.yr.MainActivity$2") == "no.nrk.yr.MainActivity"
    assert yr_app.hosting_activity("com.other.X") is None
    assert "android.view.View$OnClickListener" in yr_app.supertypes("no.nrk.yr.MainActivity$2")
    assert yr_app.superclasses("no.nrk.yr.MainActivity") == ["android.app.Activity"]


def test_model_round_trips_through_json(yr_app):
    data = json.loads(json.dumps(yr_app.to_dict()))
    assert data["model_version"] == 1
    restored = AppModel.from_dict(data)
    assert restored == yr_app
    assert restored.to_dict() == yr_app.to_dict()


def test_manifest_only_app_warns(apps_dir):
    app = load_app(apps_dir / "empty")
    assert app.classes == {}
    assert {w.code for w in app.warnings} == {"no_layouts", "no_smali"}


def test_missing_manifest(tmp_path):
    with pytest.raises(AppLayoutInvalid):
        load_app(tmp_path)


def test_broken_files_become_warnings(tmp_path):
    app = AppBuilder("com.example.broken")
    main = app.activity("MainActivity")
    app.layout("ok", [Widget("Button", "b")])
    app.add_class(main, smali_class(main))
    app.raw_files["res/layout/bad.xml"] = b"<LinearLayout"
    app.raw_files["smali/com/example/broken/Junk.smali"] = b"not smali at all"
    app.raw_files["smali_classes2/com/example/broken/MainActivity.smali"] = smali_class(main).encode()
    model = load_app(app.write(tmp_path / "broken"))

    codes = sorted(w.code for w in model.warnings)
    assert codes == ["duplicate_class", "layout_parse_error", "smali_parse_error"]
    assert list(model.classes) == [main]
    assert model.layout_files == ["res/layout/ok.xml"]


def test_fatal_manifest_error(tmp_path):
    app = AppBuilder("com.example.x")
    app.raw_files["AndroidManifest.xml"] = b"<manifest"
    with pytest.raises(ParseError):
        load_app(app.write(tmp_path / "x"))


# === 파서 퍼징: 임의 입력은 구조화된 오류 또는 성공만 ===

@pytest.mark.parametrize("seed", range(20))
def test_parsers_never_crash_on_random_input(seed):
    rng = random.Random(seed)
    alphabet = "<>/=\"' .;:{}()[]\n\tLvpabcxyz0123456789-"
    samples = [bytes(rng.randrange(256) for _ in range(rng.randint(0, 200)))]
    samples.append("".join(rng.choice(alphabet) for _ in range(rng.randint(0, 300))).encode())
    samples.append(b".class public Lcom/x/Y;\n" + samples[1])

    for data in samples:
        for parse in (
            lambda d: parse_manifest(d),
            lambda d: parse_layout(d, "res/layout/f.xml"),
            lambda d: parse_public_xml(d),
        ):
            try:
                parse(data)
            except (ParseError, ManifestInvalid):
                pass
        try:
            parse_smali(data.decode("utf-8", errors="replace"))
        except ParseError:
            pass


def _mutate(data: bytes, rng: random.Random) -> bytes:
    out = bytearray(data)
    for _ in range(rng.randint(1, 4)):
        if not out:
            break
        op = rng.randrange(5)
        at = rng.randrange(len(out))
        if op == 0:
            out[at] ^= 1 << rng.randrange(8)
        elif op == 1:
            del out[at:]
        elif op == 2:
            out[at:at] = bytes(rng.randrange(256) for _ in range(rng.randint(1, 8)))
        elif op == 3:
            lines = bytes(out).split(b"\n")
            i = rng.randrange(len(lines))
            lines.insert(rng.randrange(len(lines) + 1), lines[i])
            out = bytearray(b"\n".join(lines))
        else:
            end = min(len(out), at + rng.randint(1, 64))
            del out[at:end]
    return bytes(out)


def _corpus_files(apps_dir):
    files = sorted(p for p in apps_dir.rglob("*") if p.is_file() and p.suffix in (".smali", ".xml"))
    return [(p, p.read_bytes()) for p in files]


def _parse_file(path, data):
    if path.suffix == ".smali":
        parse_smali(data.decode("utf-8", errors="replace"))
    elif path.name == "AndroidManifest.xml":
        parse_manifest(data)
    elif path.name == "public.xml":
        parse_public_xml(data)
    else:
        parse_layout(data, "res/layout/f.xml")


@pytest.mark.slow
def test_parsers_survive_mutated_app_files(apps_dir):
    corpus = _corpus_files(apps_dir)
    assert any(p.suffix == ".smali" for p, _ in corpus)
    assert any(p.parent.name == "layout" for p, _ in corpus)

    rng = random.Random(20261018)
    for _ in range(2000):
        path, data = rng.choice(corpus)
        try:
            _parse_file(path, _mutate(data, rng))
        except ClaimCheckError:
            pass


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(25))
def test_load_app_survives_mutated_apps(apps_dir, tmp_path, sigdb, seed):
    rng = random.Random(seed)
    source = apps_dir / rng.choice(["yr", "gesture", "shop", "timed", "stopwatch"])
    target = tmp_path / source.name
    shutil.copytree(source, target)
    files = sorted(p for p in target.rglob("*") if p.is_file())
    for path in rng.sample(files, k=min(len(files), rng.randint(1, 4))):
        path.write_bytes(_mutate(path.read_bytes(), rng))

    try:
        analyze_app(target, sigdb)
    except ClaimCheckError:
        pass
