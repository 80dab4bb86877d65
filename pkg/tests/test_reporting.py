from __future__ import annotations

import csv
import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cegi.analytics import RunRecord, rank_by_cegi
from cegi.errors import CegiError, EmptySelection
from cegi.lora import ParamTable
from cegi.reporting import (
    ReportTable,
    fmt_fixed,
    fmt_signed_pct,
    render_cegi_table,
    render_emission_annotations,
    render_gain_table,
    render_plot_data,
    round_half_up,
)


def only_record():
    return RunRecord("M-1B", "summarization", 4, 4, "rouge1", 0.2, 0.3, 12.0, 0.1, 0.25)


class TestFormatting:
    @pytest.mark.parametrize(
        "value, places, text",
        [(0.125, 2, "0.13"), (2.675, 2, "2.68"), (0.0005, 3, "0.001"), (1391.885, 2, "1,391.89"), (-1.5, 0, "−2")],
    )
    def test_round_half_up(self, value, places, text):
        assert fmt_fixed(value, places) == text

    @pytest.mark.parametrize(
        "value, text",
        [(118.75, "+118.75%"), (-9.6707, "−9.67%"), (0.2057, "+0.21%"), (7570.0, "+7,570.00%"), (-0.001, "0.00%")],
    )
    def test_signed_percent(self, value, text):
        assert fmt_signed_pct(value) == text

    def test_non_finite(self):
        with pytest.raises(CegiError):
            round_half_up(float("inf"), 2)

    @given(st.floats(-1e6, 1e6), st.integers(0, 4))
    def test_rounding_error_bounded(self, value, places):
        assert abs(float(round_half_up(value, places)) - value) <= 0.5 * 10**-places + 1e-9


class TestReportTable:
    def test_rectangular(self):
        with pytest.raises(CegiError):
            ReportTable("t", ("a", "b"), (("1",),))

    def test_markdown(self):
        table = ReportTable("T", ("a", "b"), (("1", "x|y"),), ("note",))
        assert table.to_markdown() == "### T\n\n| a | b |\n| --- | --- |\n| 1 | x\\|y |\n\nnote\n"

    def test_csv_quoting(self):
        table = ReportTable("T", ("a", "b"), (('say "hi"', "1,000"),))
        text = table.to_csv()
        assert text == 'a,b\r\n"say ""hi""","1,000"\r\n'
        assert list(csv.reader(io.StringIO(text))) == [["a", "b"], ['say "hi"', "1,000"]]


class TestGainTable:
    def test_captioning_vs_base(self, fx):
        table = render_gain_table("image_captioning", fx.corpus)
        row = next(r for r in table.rows if r[0] == "Qwen-VL-7B" and r[2] == "32")
        assert row[table.headers.index("Gain")] == "+171.43%"
        assert len(table.rows) == 9

    def test_text_to_sql_vs_gpt4o(self, fx):
        table = render_gain_table("text_to_sql", fx.corpus, "gpt4o", gpt4o_baseline=0.81, layout="model")
        cells = dict(zip(table.column("Model"), table.column("Gain")))
        assert cells["Qwen2.5-14B"] == "+0.21%"
        notes = dict(zip(table.column("Model"), table.column("Note")))
        assert notes["Qwen2.5-0.5B"] == "negative" and notes["Qwen2.5-14B"] == ""

    def test_single_record(self):
        table = render_gain_table("summarization", [only_record()])
        assert table.rows == (("M-1B", "4", "4", "0.2000", "0.3000", "+50.00%", ""),)

    def test_gpt4o_from_record(self):
        table = render_gain_table("summarization", [only_record()], "gpt4o")
        assert table.column("Gain") == ["+20.00%"]

    def test_empty(self, fx):
        with pytest.raises(EmptySelection):
            render_gain_table("visual_qa", [only_record()])

    def test_bad_options(self, fx):
        with pytest.raises(CegiError):
            render_gain_table("summarization", fx.corpus, "oracle")
        with pytest.raises(CegiError):
            render_gain_table("summarization", fx.corpus, layout="grid")


class TestCegiTable:
    def test_summarization_minimum(self, fx):
        table = render_cegi_table("summarization", fx.corpus, fx.params)
        marked = [r[0] for r in table.rows if r[-1]]
        assert marked == ["Llama-3.2-1B"]
        assert table.rows[0][0] == "Llama-3.2-1B"

    def test_captioning_emission_column(self, fx):
        table = render_cegi_table("image_captioning", fx.corpus, fx.params)
        cells = dict(zip(table.column("Model"), table.column("Mean C_E (g)")))
        assert [cells[m] for m in ("Llama-3.2-11B", "Qwen-VL-2B", "Qwen-VL-7B")] == ["222.03", "97.37", "137.97"]

    def test_three_decimal_cegi_and_footnote(self, fx):
        table = render_cegi_table("text_to_sql", fx.corpus, fx.params, published=fx.published_cegi("text_to_sql"))
        assert table.column("CEGI")[0] == "0.887"
        assert table.column("Published CEGI")[0] == "1.22"
        assert any("not reproduced" in note for note in table.footnotes)

    def test_single_model(self):
        table = render_cegi_table("summarization", [only_record()], ParamTable({(1.0, 4): 0.1}))
        assert table.rows[0][0] == "M-1B" and table.rows[0][-1]


class TestAnnotations:
    def test_summarization(self, fx):
        table = render_emission_annotations("summarization", fx.corpus, quant_bits=8)
        labels = {(r[0], r[2]): r[-1] for r in table.rows}
        assert labels[("Qwen2.5-14B", "16")] == "+528.6%"
        assert labels[("Qwen2.5-0.5B", "4")] == "base"
        assert list(labels.values()).count("base") == 1

    def test_text_to_sql(self, fx):
        table = render_emission_annotations("text_to_sql", fx.corpus, quant_bits=8)
        labels = {(r[0], r[2]): r[-1] for r in table.rows}
        # the computed value is 670.73; the published cell reads +671.0%
        assert labels[("Qwen2.5-14B", "4")] == "+670.7%"

    def test_empty(self):
        with pytest.raises(EmptySelection):
            render_emission_annotations("visual_qa", [only_record()])


class TestPlotData:
    def test_visual_qa_sweet_spot(self, fx):
        assert render_plot_data("visual_qa", fx.corpus, fx.params).sweet_spot == "Qwen-VL-7B"

    def test_captioning_points(self, fx):
        series = render_plot_data("image_captioning", fx.corpus, fx.params)
        assert len(series.points) == 9

    def test_json_shape(self, fx):
        data = json.loads(render_plot_data("summarization", fx.corpus, fx.params).to_json())
        assert list(data) == ["task", "points", "sweet_spot"]
        assert list(data["points"][0]) == ["model_id", "quant_bits", "lora_rank", "emissions_g", "score"]

    @pytest.mark.parametrize("task", ["image_captioning", "visual_qa", "summarization", "text_to_sql"])
    def test_sweet_spot_matches_cegi_table(self, fx, task):
        series = render_plot_data(task, fx.corpus, fx.params)
        table = render_cegi_table(task, fx.corpus, fx.params)
        assert series.sweet_spot == table.rows[0][0] == rank_by_cegi(task, fx.corpus, fx.params).sweet_spot

    def test_empty(self):
        with pytest.raises(EmptySelection):
            render_plot_data("text_to_sql", [], ParamTable({}))

    def test_deterministic(self, fx):
        a = render_plot_data("text_to_sql", fx.corpus, fx.params).to_json()
        b = render_plot_data("text_to_sql", list(reversed(list(fx.corpus))), fx.params).to_json()
        assert a == b
