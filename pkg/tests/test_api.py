"""
Tests for the HTTP surface: analytic endpoints and run registry reads.
"""
import math
from datetime import datetime, timezone

import pytest

from analytics.formulas import mai_phi, p_s_closed_form
from crud.crud_campaign_run import crud_campaign_run
from schemas.analytics import SuccessQuery
from schemas.campaign_run import CampaignRunCreate, CampaignRunUpdate


def _record_run(db, scenario: str, status: str, duration: float, error: str = None):
    run = crud_campaign_run.create(db, obj_in=CampaignRunCreate(
        scenario=scenario,
        master_seed=1,
        config_hash="0" * 64,
        jammer="racs",
        started_at=datetime.now(timezone.utc),
        trials=10,
    ))
    return crud_campaign_run.update(db, db_obj=run, obj_in=CampaignRunUpdate(
        status=status, duration=duration, error_message=error,
    ))


class TestRoot:
    async def test_root_should_report_ok(self, async_client):
        response = await async_client.get("/")

        assert response.status_code == 200
        assert response.json()["status"] == "ok"

    async def test_health_should_see_registry_tables(self, async_client):
        response = await async_client.get("/health")

        assert response.status_code == 200
        assert response.json()["registry_ready"] is True


class TestAnalyticsEndpoints:
    async def test_success_probability_should_match_closed_form(self, async_client):
        # Arrange
        body = {"k_r": 3, "k_t": 3, "L": 64, "gamma_th": 1.0, "gamma_ab": 10.0, "gamma_eb": 10.0}
        expected = p_s_closed_form(SuccessQuery(k_r=3, L=64), 10.0, 10.0)

        # Act
        response = await async_client.post("/api/v1/analytics/success-probability", json=body)

        # Assert
        assert response.status_code == 200
        payload = response.json()
        assert payload["success"] is True
        data = payload["data"]
        assert data["closed_form"] == pytest.approx(expected)
        assert data["approximation"] == pytest.approx(expected)
        assert data["phi"] == pytest.approx(mai_phi(3, 64))
        assert data["code_count"] == 7
        assert data["throughput"] == pytest.approx(16.0 * expected / 3)

    async def test_success_probability_without_k_t_should_omit_throughput(self, async_client):
        body = {"k_r": 2, "gamma_ab": 10.0, "gamma_eb": 1.0}

        response = await async_client.post("/api/v1/analytics/success-probability", json=body)

        assert response.status_code == 200
        assert response.json()["data"]["throughput"] is None

    async def test_zero_gamma_ab_should_be_rejected(self, async_client):
        body = {"k_r": 3, "gamma_ab": 0.0, "gamma_eb": 1.0}

        response = await async_client.post("/api/v1/analytics/success-probability", json=body)

        assert response.status_code == 422
        assert response.json()["success"] is False
        assert response.json()["error_code"] == "VALIDATION_ERROR"

    async def test_link_budget_should_return_linear_snrs(self, async_client):
        # Arrange
        body = {"d_ab": 20.0, "d_eb": math.dist((10 * math.sqrt(2.0), 10 * math.sqrt(2.0)), (0.0, 20.0))}

        # Act
        response = await async_client.post("/api/v1/analytics/link-budget", json=body)

        # Assert
        assert response.status_code == 200
        data = response.json()["data"]
        assert data["gamma_ab"] == pytest.approx(10 ** 13.5 / 20 ** 3, rel=1e-9)
        assert data["gamma_eb"] / data["gamma_ab"] == pytest.approx(2.2305, rel=1e-3)

    async def test_key_generation_time_should_cover_measurement_types(self, async_client):
        response = await async_client.get("/api/v1/analytics/key-generation-time", params={"k_t": 16})

        assert response.status_code == 200
        assert response.json()["data"] == pytest.approx({"RSS": 4.0, "CIR": 16 / 15, "CFR": 1.0})

    async def test_zero_k_t_should_be_rejected(self, async_client):
        response = await async_client.get("/api/v1/analytics/key-generation-time", params={"k_t": 0})

        assert response.status_code == 422


class TestRunEndpoints:
    async def test_list_should_return_newest_first(self, async_client, db_session):
        # Arrange
        _record_run(db_session, "first", "success", 1.0)
        _record_run(db_session, "second", "failed", 3.0, "boom")

        # Act
        response = await async_client.get("/api/v1/runs")

        # Assert
        assert response.status_code == 200
        data = response.json()["data"]
        assert data["total"] == 2
        assert [item["scenario"] for item in data["items"]] == ["second", "first"]

    async def test_list_should_filter_by_scenario(self, async_client, db_session):
        _record_run(db_session, "first", "success", 1.0)
        _record_run(db_session, "second", "success", 1.0)

        response = await async_client.get("/api/v1/runs", params={"scenario": "first"})

        assert response.json()["data"]["total"] == 1

    async def test_get_should_return_one_run(self, async_client, db_session):
        run = _record_run(db_session, "first", "success", 2.5)

        response = await async_client.get(f"/api/v1/runs/{run.id}")

        assert response.status_code == 200
        assert response.json()["data"]["duration"] == 2.5

    async def test_missing_run_should_return_not_found(self, async_client):
        response = await async_client.get("/api/v1/runs/999")

        assert response.status_code == 404
        assert response.json()["error_code"] == "RESOURCE_NOT_FOUND"

    async def test_stats_should_aggregate_finished_runs(self, async_client, db_session):
        # Arrange
        _record_run(db_session, "a", "success", 1.0)
        _record_run(db_session, "b", "failed", 3.0, "decode failure")

        # Act
        response = await async_client.get("/api/v1/runs/stats")

        # Assert
        data = response.json()["data"]
        assert data["total_runs"] == 2
        assert data["success_rate"] == 50.0
        assert data["average_duration_seconds"] == 2.0
        assert data["recent_failure_reasons"] == ["decode failure"]
